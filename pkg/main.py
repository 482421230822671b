#!/usr/bin/env python3
"""
Action Diagnosis - Main Entry Point

Command-line interface for the handle-grasp experiments: simulate a
campaign, diagnose and correct its failures, run sensitivity sweeps,
retrain the success model and evaluate corrected models.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from action_diagnosis.harness.app import DiagnosisToolkit
from action_diagnosis.harness.sweeps import SweepParameter
from action_diagnosis.utils.error_handler import ErrorHandler
from action_diagnosis.utils.exceptions import (
    ActionDiagnosisError,
    ConfigurationError,
    DataValidationError,
    EmptyDatasetError,
    ExperimentError,
    ModelFitError,
)

ERROR_LABELS = [
    (ConfigurationError, "CONFIGURATION ERROR"),
    (EmptyDatasetError, "DATA ERROR"),
    (DataValidationError, "DATA ERROR"),
    (ModelFitError, "MODEL FIT ERROR"),
    (ExperimentError, "EXPERIMENT ERROR"),
    (ActionDiagnosisError, "APPLICATION ERROR"),
]


def create_argument_parser() -> argparse.ArgumentParser:
    """Create command-line argument parser."""
    parser = argparse.ArgumentParser(
        description='Action failure diagnosis and experience correction',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py simulate                       # Random campaign -> campaign.csv
  python main.py diagnose --failure-id 7        # Diagnose one failed grasp
  python main.py correct --kappa 4              # Corrections with gamma shape 4
  python main.py sweep --param anchor --emit-plot-data
  python main.py retrain --campaign results/campaign.csv
  python main.py eval --seed 3 --out runs/3     # Correction-and-retrain experiment
        """
    )

    parser.add_argument('--config', type=str,
                        help='Configuration file path (default: config/action_diagnosis.ini)')
    parser.add_argument('--seed', type=int, help='Root random seed (overrides the config)')
    parser.add_argument('--out', type=str, help='Output directory (overrides the config)')
    parser.add_argument('--verbose', action='store_true', help='Enable verbose logging output')

    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', help='Run a random grasp campaign')
    simulate.add_argument('--count', type=int, help='Number of grasps')

    def add_inputs(sub: argparse.ArgumentParser, model: bool = True) -> None:
        sub.add_argument('--campaign', type=str,
                         help='Campaign CSV (default: regenerate from the seed)')
        if model:
            sub.add_argument('--model', type=str,
                             help='Execution model JSON (default: learn from the campaign)')

    diagnose = commands.add_parser('diagnose', help='Diagnose failed executions')
    add_inputs(diagnose)
    diagnose.add_argument('--failure-id', type=int, help='Diagnose this failure only')

    correct = commands.add_parser('correct', help='Correct failed executions')
    add_inputs(correct)
    correct.add_argument('--kappa', type=float, help='Gamma shape (default: first configured)')

    sweep = commands.add_parser('sweep', help='Diagnosis sensitivity sweep')
    add_inputs(sweep)
    sweep.add_argument('--param', required=True,
                       choices=['anchor', 'r', 'kmax'] + [p.value for p in SweepParameter],
                       help='Swept setting')
    sweep.add_argument('--emit-plot-data', action='store_true',
                       help='Also write the per-setting plot CSV')
    sweep.add_argument('--full-grid', action='store_true', default=None,
                       help='100-point anchor and r grids')

    retrain = commands.add_parser('retrain', help='Refit the success model on corrections')
    add_inputs(retrain, model=False)
    retrain.add_argument('--kappa', type=float, help='Gamma shape (default: first configured)')

    evaluate = commands.add_parser('eval', help='Correction-and-retrain experiment')
    evaluate.add_argument('--trials', type=int, help='Sampled executions per kappa')
    evaluate.add_argument('--kappa', type=float, action='append', dest='kappa_values',
                          help='Gamma shape, repeatable (default: configured values)')
    evaluate.add_argument('--pose-noise', type=float, dest='pose_noise',
                          help='Pose-noise std in meters for the evaluation grasps '
                               '(default: the scene setting)')

    return parser


def run_command(toolkit: DiagnosisToolkit, args: argparse.Namespace) -> List[Path]:
    if args.command == 'simulate':
        return toolkit.simulate(args.count)
    if args.command == 'diagnose':
        return toolkit.diagnose(args.campaign, args.model, args.failure_id)
    if args.command == 'correct':
        return toolkit.correct(args.campaign, args.model, args.kappa)
    if args.command == 'sweep':
        return toolkit.sweep(args.param, args.emit_plot_data, args.full_grid,
                             args.campaign, args.model)
    if args.command == 'retrain':
        return toolkit.retrain(args.campaign, args.kappa)
    return toolkit.evaluate(args.trials, args.kappa_values, args.pose_noise)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main application entry point with command-line interface.

    Returns:
        int: Process exit code
    """
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    toolkit = DiagnosisToolkit(config_path=args.config, seed=args.seed, out_dir=args.out,
                               verbose=args.verbose)
    error_handler = ErrorHandler("main_application")

    try:
        toolkit.initialize()
        written = run_command(toolkit, args)
        for path in written:
            print(f"✓ wrote {path}")
        return 0

    except Exception as e:
        label = next((text for kind, text in ERROR_LABELS if isinstance(e, kind)),
                     "UNEXPECTED ERROR")
        print(f"{label}: {e}", file=sys.stderr)
        return error_handler.handle(e, args.command)

    finally:
        toolkit.cleanup()


if __name__ == "__main__":
    sys.exit(main())
