"""
Command line entry point - src/cli/main.py
Scaling reports, characterization, runs, sweeps and studies from one config
"""

from dataclasses import dataclass
from functools import wraps
from typing import Callable, Optional, Tuple

import click
import pandas as pd
from loguru import logger
from rich.console import Console
from rich.table import Table

from src.cli.config import ExperimentConfig, domain_errors, load_experiment
from src.cli.output import write_result
from src.core.exceptions import (
    ConfigError,
    ModuleException,
    OutputError,
    SimulationDivergenceError,
    UnsupportedGaitError,
    ValidationException,
)
from src.modules.metrics.summary import SUMMARY_COLUMNS
from src.presets.loader import list_presets, load_preset, preset_text
from src.utils.config import ConfigManager
from src.utils.logger import setup_logging
from src.workflows.base import WorkflowResult
from src.workflows.characterization import CharacterizationRequest, CharacterizationWorkflow
from src.workflows.locomotion_study import (
    RunStudyRequest,
    RunStudyWorkflow,
    SweepStudyRequest,
    SweepStudyWorkflow,
)
from src.workflows.payload_study import PayloadStudyRequest, PayloadStudyWorkflow
from src.workflows.reporting import ComparisonReportRequest, ComparisonReportWorkflow
from src.workflows.scaling_study import ScalingStudyRequest, ScalingStudyWorkflow
from src.workflows.sensing_study import SensingStudyRequest, SensingStudyWorkflow

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DIVERGED = 4

console = Console()


@dataclass
class CliOptions:
    config_path: Optional[str]
    out_dir: Optional[str]
    plots: Optional[bool]
    preset: Optional[str]
    parallel: int

    def load(self) -> Tuple[ExperimentConfig, ConfigManager]:
        """Parsed config with the command-line overrides applied"""
        config, manager = load_experiment(self.config_path)
        if self.preset is not None:
            if self.preset not in list_presets():
                raise ConfigError(f"unknown preset '{self.preset}' (available: {', '.join(list_presets())})",
                                  'robot', 'preset')
            config.robot.preset = self.preset
            config.robot.file = None
        if self.out_dir is not None:
            config.output.directory = self.out_dir
        if self.plots is not None:
            config.output.plots = self.plots
        return config, manager


def handle_errors(func: Callable) -> Callable:
    """Map failures to exit codes: 2 config, 3 IO, 4 divergence"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except ConfigError as e:
            logger.error(f"Configuration error: {e.message}")
            click.echo(f"config error: {e.message}", err=True)
            ctx.exit(EXIT_CONFIG)
        except (ValidationException, UnsupportedGaitError) as e:
            logger.error(f"Invalid parameters: {e}")
            click.echo(f"config error: {e}", err=True)
            ctx.exit(EXIT_CONFIG)
        except (OutputError, OSError) as e:
            logger.error(f"Output error: {e}")
            click.echo(f"io error: {e}", err=True)
            ctx.exit(EXIT_IO)
        except SimulationDivergenceError as e:
            logger.error(f"Simulation diverged: {e}")
            click.echo(f"simulation diverged: {e}", err=True)
            ctx.exit(EXIT_DIVERGED)
        except ModuleException as e:
            logger.error(f"{func.__name__} failed: {e}")
            raise
    return wrapper


def _finish(result: WorkflowResult, config: ExperimentConfig):
    written = write_result(result, config.output.directory, config.output.plots)

    table = Table(title=f"{result.workflow} results", show_header=False)
    table.add_column("quantity", style="cyan")
    table.add_column("value")
    for key, value in result.highlights.items():
        table.add_row(str(key), str(value))
    console.print(table)
    for path in written:
        console.print(f"  wrote {path}")


# ==================== GROUP ====================

@click.group()
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help="Experiment config (YAML sections)")
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), help="Output directory")
@click.option('--plots/--no-plots', default=None, help="Also write SVG plots")
@click.option('--preset', help="Robot preset replacing the config's robot")
@click.option('--parallel', type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for sweeps")
@click.option('-v', '--verbose', is_flag=True, help="Debug logging")
@click.option('--log-config', type=click.Path(dir_okay=False), default="config/logging.yaml",
              show_default=True, help="Logging config")
@click.pass_context
def cli(ctx, config_path, out_dir, plots, preset, parallel, verbose, log_config):
    """Design and simulation toolkit for piezo-driven legged microrobots"""
    setup_logging(log_config, level="DEBUG" if verbose else None)
    ctx.obj = CliOptions(config_path, out_dir, plots, preset, parallel)


# ==================== COMMANDS ====================

@cli.command()
@click.option('--compare-with', help="Preset whose recorded characteristics give experimental factors")
@click.pass_obj
@handle_errors
def scale(options: CliOptions, compare_with):
    """Predicted scaling of the robot's key characteristics"""
    config, manager = options.load()
    if compare_with is not None:
        config.transform.compare_with = compare_with
    request = ScalingStudyRequest(
        robot=config.build_robot(manager),
        transform=config.build_transform(manager),
        mode=config.stiffness_mode,
        scale_flexure_length=config.transform.scale_flexure_length,
        measured_robot=config.build_comparison_robot(manager),
    )
    _finish(ScalingStudyWorkflow().execute(request), config)


@cli.command()
@click.pass_obj
@handle_errors
def characterize(options: CliOptions):
    """Vertical stiffness curve and transmission frequency responses"""
    config, manager = options.load()
    section = config.characterize
    request = CharacterizationRequest(
        robot=config.build_robot(manager),
        drive_voltage=section.drive_voltage,
        f_lo=section.f_lo,
        f_hi=section.f_hi,
        n_points=section.n_points,
        stiffness_points=section.stiffness_points,
    )
    with domain_errors('characterize', manager):
        result = CharacterizationWorkflow().execute(request)
    _finish(result, config)


@cli.command()
@click.option('--gait', 'gait_name', help="Gait replacing gait.name")
@click.option('--frequency', type=float, help="Drive frequency (Hz) replacing gait.frequency")
@click.option('--voltage', type=float, help="Drive voltage (V) replacing gait.voltage")
@click.pass_obj
@handle_errors
def run(options: CliOptions, gait_name, frequency, voltage):
    """Simulate one run and write its trajectory and summary"""
    config, manager = options.load()
    if voltage is not None:
        config.gait.voltage = voltage
    robot = config.build_robot(manager)
    program = config.build_program(robot, manager, gait_name=gait_name, frequency=frequency)
    request = RunStudyRequest(robot, program, config.build_sim_config(manager), config.sweep.rectify)
    _finish(RunStudyWorkflow().execute(request), config)


@cli.command()
@click.option('--repetitions', type=click.IntRange(min=1), help="Runs per condition replacing sweep.repetitions")
@click.pass_obj
@handle_errors
def sweep(options: CliOptions, repetitions):
    """Speed, stride and CoT over gaits and frequencies"""
    config, manager = options.load()
    robot = config.build_robot(manager)
    config.check_sweep_gaits(robot, manager)
    request = SweepStudyRequest(
        robot=robot,
        gaits=config.sweep.gaits,
        frequencies=config.sweep.frequencies,
        cfg=config.build_sim_config(manager),
        repetitions=repetitions or config.sweep.repetitions,
        voltage=config.gait.voltage,
        lift_swing_phase_lead=config.gait.lift_swing_phase_lead,
        parallel=options.parallel,
        rectify=config.sweep.rectify,
    )
    _finish(SweepStudyWorkflow().execute(request), config)


@cli.command()
@click.pass_obj
@handle_errors
def payload(options: CliOptions):
    """Running speed under added payload"""
    config, manager = options.load()
    robot = config.build_robot(manager)
    section = config.payload
    request = PayloadStudyRequest(
        robot=robot,
        program=config.build_program(robot, manager, frequency=section.frequency),
        cfg=config.build_sim_config(manager),
        multiples=section.multiples,
        payloads=section.payloads_g,
        frequency=section.frequency,
        parallel=options.parallel,
    )
    _finish(PayloadStudyWorkflow().execute(request), config)


@cli.command()
@click.pass_obj
@handle_errors
def sense(options: CliOptions):
    """Foot-position estimates from simulated drive currents"""
    config, manager = options.load()
    robot = config.build_robot(manager)
    section = config.sensing
    program = config.build_program(robot, manager, gait_name=section.gait, frequency=section.frequency,
                                   section='sensing')
    request = SensingStudyRequest(robot, program, config.build_sim_config(manager), section.corner)
    _finish(SensingStudyWorkflow().execute(request), config)


@cli.command()
@click.option('--base', 'base_name', default="hamr-vi", show_default=True, help="Base preset")
@click.option('--scaled', 'scaled_name', default="hamr-jr", show_default=True, help="Scaled preset")
@click.option('--sweep-summary', type=click.Path(exists=True, dir_okay=False),
              help="Saved sweep_summary.csv to band-check")
@click.pass_obj
@handle_errors
def report(options: CliOptions, base_name, scaled_name, sweep_summary):
    """Compare two presets: characteristics, leg stiffness, sweep bands"""
    config, manager = options.load()
    with domain_errors('robot', manager):
        base = load_preset(base_name)
        scaled = load_preset(scaled_name)

    frame = None
    if sweep_summary is not None:
        frame = pd.read_csv(sweep_summary, keep_default_na=True)
        missing = [col for col in SUMMARY_COLUMNS if col not in frame.columns]
        if missing:
            raise ConfigError(f"{sweep_summary} lacks summary columns {missing}", 'report', 'sweep_summary')

    gravity = config.build_sim_config(manager).gravity
    request = ComparisonReportRequest(base, scaled, config.build_transform(manager), gravity, frame)
    _finish(ComparisonReportWorkflow().execute(request), config)


# ==================== PRESETS ====================

@cli.group()
def preset():
    """Inspect the shipped robot presets"""


@preset.command('list')
def preset_list():
    for name in list_presets():
        click.echo(name)


@preset.command('show')
@click.argument('name')
def preset_show(name):
    """Print a preset's YAML, provenance comments included"""
    try:
        click.echo(preset_text(name), nl=False)
    except KeyError as e:
        click.echo(f"config error: {e.args[0]}", err=True)
        click.get_current_context().exit(EXIT_CONFIG)


def main():
    cli(prog_name="microrobot")


if __name__ == "__main__":
    main()
