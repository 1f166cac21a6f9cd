from .commands import AnalysisReport, analyze_spec, cmd_analyze, cmd_nyquist, cmd_rate_scan, cmd_simulate
from .spec import SimulationSettings, SystemSpec, load_system_spec, parse_spec

__all__ = [
    "AnalysisReport",
    "analyze_spec",
    "cmd_analyze",
    "cmd_nyquist",
    "cmd_rate_scan",
    "cmd_simulate",
    "SimulationSettings",
    "SystemSpec",
    "load_system_spec",
    "parse_spec",
]
