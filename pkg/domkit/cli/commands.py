"""The four domkit subcommands. Each returns the process exit code."""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

import domkit
from domkit.dominance import (
    build_dominance_certificate,
    kyp_frequency_test,
    passivity_degree_candidates,
    passivity_rate_scan,
    positive_window,
    transformed_sector_supply,
    verify_dominance_certificate,
)
from domkit.frequency import circle_criterion, disk, locus_frame, loop_transform, nyquist_locus
from domkit.lti import pole_zero_split
from domkit.simulate import LureLoop, classify, equilibria, simulate, trajectory_frame
from domkit.utils.errors import DomkitError, InconclusiveError, NumericsError, SpecError
from domkit.utils.io import dump_json, sidecar_path, write_csv, write_jsonl, write_text
from domkit.utils.logging import init_logger

from .spec import SystemSpec

logger = init_logger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _inconclusive(e: InconclusiveError) -> dict:
    return {"inconclusive": True, "reason": e.reason, "detail": e.detail}


@dataclass
class AnalysisReport:
    """Everything ``analyze`` found, serialized with sorted keys and no timestamps."""

    name: str
    lam: float
    feedback: str
    system: Dict[str, Any]
    pole_split: Dict[str, Any]
    passivity_candidates: Any
    verdict: Dict[str, Any]
    provenance: Dict[str, Any]
    certificate: Optional[Dict[str, Any]] = None
    kyp: Optional[Dict[str, Any]] = None
    circle: Optional[Dict[str, Any]] = None
    nonlinearity: Optional[Dict[str, Any]] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def conclusive(self) -> bool:
        return self.verdict.get("p") is not None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        return out

    def to_json(self) -> str:
        return dump_json(self.to_dict())


def _provenance(spec: SystemSpec, indent_radius: Optional[float]) -> dict:
    return {
        "tool": "domkit",
        "version": domkit.__version__,
        "grid": spec.grid().describe(),
        "indent_radius": indent_radius,
        "tolerances": spec.tolerances.to_dict(),
    }


def _certificate_section(spec: SystemSpec) -> dict:
    """Lyapunov certificate of the linear part at rate λ, checked by the verifier."""
    if spec.linear is None and not spec.G.is_proper:
        return {"inconclusive": True, "reason": "improper transfer function", "detail": "no state-space realization"}
    A = spec.realization().A
    try:
        cert = build_dominance_certificate(A, spec.lam, tolerances=spec.tolerances)
    except InconclusiveError as e:
        return _inconclusive(e)
    except NumericsError as e:
        return {"inconclusive": True, "reason": "singular Lyapunov equation", "detail": str(e)}
    result = verify_dominance_certificate(A, cert, tolerances=spec.tolerances)
    return {
        "p": cert.p,
        "eps": cert.eps,
        "P": cert.P,
        "verified": result.ok,
        "reason": result.reason,
        "max_eigenvalue": result.max_eigenvalue,
        "lmi_rel": spec.tolerances.lmi,
    }


def analyze_spec(spec: SystemSpec, indent_radius: Optional[float] = None) -> AnalysisReport:
    G, lam, tol = spec.loop, spec.lam, spec.tolerances
    num, den = G.coefficients()
    split = pole_zero_split(G, lam, tol.boundary_tol(lam))
    report = AnalysisReport(
        name=spec.name,
        lam=lam,
        feedback="negative" if spec.feedback_sign == -1 else "positive",
        system={"num": num, "den": den, "order": G.order, "relative_degree": G.relative_degree},
        pole_split=split.to_dict(),
        passivity_candidates=None,
        verdict={},
        provenance=_provenance(spec, indent_radius),
    )
    try:
        report.passivity_candidates = sorted(passivity_degree_candidates(G, lam, split=split))
    except InconclusiveError as e:
        report.passivity_candidates = _inconclusive(e)
    report.certificate = _certificate_section(spec)

    if spec.sector is None:
        if split.boundary_poles:
            report.verdict = {"p": None, "source": "pole_split", "reason": "boundary pole"}
        else:
            report.verdict = {"p": split.p, "source": "pole_split", "reason": None}
        return report

    k1, k2 = spec.sector
    try:
        circle = circle_criterion(G, lam, k1, k2, spec.grid(), indent_radius, tol)
    except InconclusiveError as e:
        report.circle = _inconclusive(e)
        report.verdict = {"p": None, "source": "circle", "reason": e.reason}
    else:
        report.circle = circle.to_dict()
        report.verdict = {"p": circle.verdict, "source": "circle", "reason": circle.reason}

    # The sector supply counts poles of the loop-transformed system.
    transformed = loop_transform(G, k1)
    supply = transformed_sector_supply(k1, k2)
    kyp = {"system": "loop_transformed", "supply": supply.to_dict()}
    try:
        transformed_split = pole_zero_split(transformed, lam, tol.boundary_tol(lam))
        result = kyp_frequency_test(transformed, lam, supply, transformed_split.p, spec.grid(transformed), tol)
        kyp["report"] = result.to_dict()
    except InconclusiveError as e:
        kyp.update(_inconclusive(e))
    report.kyp = kyp

    if spec.nonlinearity is not None:
        phi = spec.nonlinearity
        in_sector = phi.validate_sector() and k1 <= phi.sector[0] and phi.sector[1] <= k2
        report.nonlinearity = phi.to_dict()
        if report.circle is not None and "conditions" in report.circle:
            report.circle["conditions"]["i"] = bool(in_sector)
        report.diagnostics["clause_i"] = bool(in_sector)
        if not in_sector:
            logger.warning(f"{phi.name} slopes {phi.sector} leave the declared sector [{k1:g}, {k2:g}]")
    return report


def cmd_analyze(spec: SystemSpec, out=None, indent_radius=None, **_) -> int:
    logger.info(f"analyze {spec.name} at rate {spec.lam:g}")
    report = analyze_spec(spec, indent_radius)
    write_text(report.to_json(), out)
    if out is not None:
        logger.info(f"report written to {out}")
    if not report.conclusive:
        logger.warning(f"inconclusive: {report.verdict.get('reason')}")
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_nyquist(spec: SystemSpec, out=None, indent_radius=None, **_) -> int:
    logger.info(f"nyquist {spec.name} at rate {spec.lam:g}")
    try:
        locus = nyquist_locus(spec.loop, spec.lam, spec.grid(), indent_radius, spec.tolerances.boundary_tol(spec.lam))
    except InconclusiveError as e:
        logger.error(f"{e.reason}: {e.detail} (pass --indent-radius to indent around it)")
        return EXIT_INCONCLUSIVE
    write_csv(locus_frame(locus), out)
    if out is not None:
        logger.info(f"locus written to {out}")
        if spec.sector is not None:
            k1, k2 = spec.sector
            path = sidecar_path(out, ".disk.json")
            write_text(dump_json({"lambda": spec.lam, "k1": k1, "k2": k2, "disk": disk(k1, k2).to_dict()}), path)
            logger.info(f"disk parameters written to {path}")
    return EXIT_OK


def cmd_simulate(spec: SystemSpec, out=None, **_) -> int:
    if spec.simulation is None or spec.nonlinearity is None:
        raise SpecError("simulate needs both a simulation block and a nonlinearity")
    sim = spec.simulation
    loop = LureLoop(spec.realization(), spec.nonlinearity, spec.feedback_sign)
    logger.info(f"simulate {spec.name}: dt={sim.dt:g}, T={sim.T:g}")
    traj = simulate(loop, sim.x0, sim.dt, sim.T)
    label = classify(traj, tolerances=spec.tolerances)

    document = {"label": label.to_dict(), "x0": sim.x0, "dt": sim.dt, "T": sim.T, "samples": len(traj)}
    try:
        document["equilibria"] = [{"u": e.u, "y": e.y} for e in equilibria(loop)]
    except DomkitError as e:
        document["equilibria"] = None
        logger.info(f"equilibria skipped: {e}")
    text = dump_json(document)
    write_text(text)
    if out is not None:
        write_csv(trajectory_frame(traj), out)
        write_text(text, sidecar_path(out, ".label.json"))
        logger.info(f"trajectory written to {out}")
    if traj.diverged:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_rate_scan(
    spec: SystemSpec,
    out=None,
    lambda_min=None,
    lambda_max=None,
    steps=None,
    p=None,
    quiet=False,
    **_,
) -> int:
    settings = dict(spec.rate_scan)
    for key, value in (("lambda_min", lambda_min), ("lambda_max", lambda_max), ("steps", steps), ("p", p)):
        if value is not None:
            settings[key] = value
    lo = float(settings.get("lambda_min", 0.0))
    hi = float(settings.get("lambda_max", max(1.0, 2 * spec.lam)))
    count = int(settings.get("steps", 101))
    if lo < 0 or hi <= lo or count < 2:
        raise SpecError(f"rate scan needs 0 <= lambda_min < lambda_max and steps >= 2, got {lo}, {hi}, {count}")
    requested = settings.get("p")
    lambdas = np.linspace(lo, hi, count)
    logger.info(f"rate-scan {spec.name} over [{lo:g}, {hi:g}] in {count} steps")
    rows = passivity_rate_scan(
        spec.loop,
        lambdas,
        None if requested is None else int(requested),
        spec.uniform_grid(),
        spec.tolerances,
        disable_tqdm=quiet,
    )
    write_jsonl((row.to_dict() for row in rows), out)
    window = positive_window(rows)
    if window is None:
        logger.info("no rate in the scan passes the passivity test")
    else:
        logger.info(f"passivity holds for rates in [{window[0]:g}, {window[1]:g}]")
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "nyquist": cmd_nyquist,
    "simulate": cmd_simulate,
    "rate-scan": cmd_rate_scan,
}
