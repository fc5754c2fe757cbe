"""Result and verification-report records shared by the library and CLI.

Pure data model: construction, invariants and dict round-trips live here;
rendering to JSON/CSV is the CLI's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .problem import Alignment, ProblemParams

__all__ = [
    "SpectrumRecord",
    "VerificationReport",
    "NormalizationComparison",
    "VerificationSummary",
    "summarize",
]

NORMALIZATION_FLAG_TOL = 1e-6


@dataclass(frozen=True)
class SpectrumRecord:
    """One spectrum table row; invalid cells keep their diagnosis in status."""

    params: ProblemParams
    n: int
    kappa: float
    s: float | None
    energy_over_mass: float | None
    scale_a: float | None
    valid: bool
    status: str = "ok"

    def to_row(self) -> dict:
        p = self.params
        return {
            "dimension": p.dimension,
            "j": p.j,
            "alignment": p.alignment.value,
            "alpha_v": p.alpha_v,
            "alpha_s": p.alpha_s,
            "mass": p.mass,
            "n": self.n,
            "kappa": self.kappa,
            "s": self.s,
            "energy_over_mass": self.energy_over_mass,
            "scale_a": self.scale_a,
            "valid": self.valid,
            "status": self.status,
        }

    @classmethod
    def from_row(cls, row: dict) -> "SpectrumRecord":
        """Inverse of to_row; accepts both JSON-typed and CSV string values
        (missing optionals arrive as null or as the empty string)."""

        def opt(v):
            return None if v is None or v == "" else float(v)

        def flag(v):
            return v == "true" if isinstance(v, str) else bool(v)

        params = ProblemParams(
            dimension=int(row["dimension"]),
            j=float(row["j"]),
            alignment=Alignment(row["alignment"]),
            alpha_v=float(row["alpha_v"]),
            alpha_s=float(row["alpha_s"]),
            mass=float(row["mass"]),
        )
        return cls(
            params=params,
            n=int(row["n"]),
            kappa=float(row["kappa"]),
            s=opt(row["s"]),
            energy_over_mass=opt(row["energy_over_mass"]),
            scale_a=opt(row["scale_a"]),
            valid=flag(row["valid"]),
            status=str(row["status"]),
        )


def _context_string(context: dict) -> str:
    parts = []
    for key in sorted(context):
        val = context[key]
        if isinstance(val, bool):
            parts.append(f"{key}={'true' if val else 'false'}")
        elif isinstance(val, float):
            parts.append(f"{key}={val:.12g}")
        else:
            parts.append(f"{key}={val}")
    return ";".join(parts)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one numerical check; passed <=> residual_max <= tolerance."""

    name: str
    residual_max: float
    residual_rms: float
    tolerance: float
    passed: bool = field(init=False)
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.residual_max <= self.tolerance))

    @classmethod
    def from_residuals(cls, name: str, residuals, tolerance: float,
                       context: dict | None = None) -> "VerificationReport":
        res = np.atleast_1d(np.asarray(residuals, dtype=float))
        rmax = float(np.max(res)) if res.size else 0.0
        rrms = float(np.sqrt(np.mean(res**2))) if res.size else 0.0
        return cls(name=name, residual_max=rmax, residual_rms=rrms,
                   tolerance=tolerance, context=dict(context or {}))

    def to_row(self) -> dict:
        return {
            "check": self.name,
            "residual_max": self.residual_max,
            "residual_rms": self.residual_rms,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "context": _context_string(self.context),
        }

    @classmethod
    def from_row(cls, row: dict) -> "VerificationReport":
        """Inverse of to_row.  Context values come back as strings (the
        canonical row rendering is not typed); `passed` is recomputed and
        must agree with the row."""
        context = {}
        if row.get("context"):
            for item in str(row["context"]).split(";"):
                key, _, val = item.partition("=")
                context[key] = val
        rep = cls(name=str(row["check"]), residual_max=float(row["residual_max"]),
                  residual_rms=float(row["residual_rms"]), tolerance=float(row["tolerance"]),
                  context=context)
        stated = row["passed"] == "true" if isinstance(row["passed"], str) else bool(row["passed"])
        if stated != rep.passed:
            raise ValueError(f"inconsistent row: passed={stated} but residuals say {rep.passed}")
        return rep


@dataclass(frozen=True)
class NormalizationComparison:
    """Quadrature-fixed normalization constant vs its analytic closed form.

    The quadrature value is authoritative; the closed form is computed for
    comparison only and the record is flagged when the two differ by more
    than one part in 10^6 (or the closed form is undefined).
    """

    quadrature_constant: float
    closed_form: float | None
    ratio: float | None = field(init=False)
    flagged: bool = field(init=False)

    def __post_init__(self):
        if not self.quadrature_constant > 0.0:
            raise ValueError("quadrature normalization constant must be positive")
        pcf = self.closed_form
        if pcf is None or not math.isfinite(pcf):
            object.__setattr__(self, "closed_form", None)
            object.__setattr__(self, "ratio", None)
            object.__setattr__(self, "flagged", True)
        else:
            ratio = pcf / self.quadrature_constant
            object.__setattr__(self, "ratio", ratio)
            object.__setattr__(self, "flagged", bool(abs(ratio - 1.0) > NORMALIZATION_FLAG_TOL))

    def to_row(self) -> dict:
        return {
            "check": "normalization_comparison",
            "quadrature_constant": self.quadrature_constant,
            "closed_form": self.closed_form,
            "ratio": self.ratio,
            "flagged": self.flagged,
        }

    @classmethod
    def from_row(cls, row: dict) -> "NormalizationComparison":
        closed = row["closed_form"]
        closed = None if closed in (None, "") else float(closed)
        return cls(quadrature_constant=float(row["quadrature_constant"]),
                   closed_form=closed)


@dataclass(frozen=True)
class VerificationSummary:
    total: int
    n_passed: int
    n_failed: int
    all_passed: bool
    worst_by_check: dict


def summarize(reports) -> VerificationSummary:
    """Count pass/fail and track the worst residual per check name."""
    reports = list(reports)
    worst: dict = {}
    for rep in reports:
        cur = worst.get(rep.name)
        if cur is None or rep.residual_max > cur:
            worst[rep.name] = rep.residual_max
    n_passed = sum(1 for rep in reports if rep.passed)
    return VerificationSummary(
        total=len(reports),
        n_passed=n_passed,
        n_failed=len(reports) - n_passed,
        all_passed=n_passed == len(reports),
        worst_by_check=worst,
    )
