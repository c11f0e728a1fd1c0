"""
Residual gates for the exact families and the list of places where published
formulas disagree with the cubic-root oracle.

The oracle takes the roots of (p + 1)^2 (p - 2) = 2c exp(-3z/2) from
mpmath.polyroots at 50 digits and evaluates v from the primitive of
v_z = (p^2 - 1)/b, normalized as the closed forms are.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import integrate

from ._asymptotic import ExpansionSource, eval_asymptotic
from ._cubic import Branch
from ._errors import Unsupported, ValidationError, ZeroB
from ._exact import boundary_price, eval_jet, eval_u, eval_v, eval_vz, eval_w, reduced_jet
from ._family import FamilyTag, SolutionFamily
from ._model import ModelKind, pde_residual
from ._params import ModelParams
from ._printed import printed_v
from .reduction import (
    ReductionParams,
    branch_point_value,
    constant_solutions,
    quadrature_closed_form,
    reduced_residual,
    uniformized_quadrature,
)


logger = logging.getLogger(__name__)

ORACLE_DPS = 50
PDE_TOL = 1e-7
ODE_TOL = 1e-8
AGREEMENT_TOL = 1e-8


def _oracle_root(family: SolutionFamily, z: float) -> mpmath.mpf:
    with mpmath.workdps(ORACLE_DPS):
        rhs = 2 * mpmath.mpf(family.c) * mpmath.exp(-mpmath.mpf(3) / 2 * mpmath.mpf(z))
        roots = mpmath.polyroots([1, 0, -3, -(2 + rhs)], maxsteps=200, extraprec=2 * ORACLE_DPS)
        three_roots = family.tag is not FamilyTag.R and abs(family.c) * mpmath.exp(-1.5 * mpmath.mpf(z)) <= 2
        if three_roots:
            real = sorted(mpmath.re(r) for r in roots)
        else:
            real = [mpmath.re(min(roots, key=lambda r: abs(mpmath.im(r))))]
        match family.tag, family.chart:
            case FamilyTag.R, _:
                return real[-1]
            case FamilyTag.U1, _:
                return real[-1]
            case FamilyTag.U2, _:
                return real[1]
            case FamilyTag.U3, _:
                return real[0]
    raise Unsupported(f"no root oracle for family {family.label}")


def oracle_v(family: SolutionFamily, z, params: ModelParams):
    """v(z) of R/U1/U2/U3 from the extended-precision roots, d included."""
    if params.b == 0:
        raise ZeroB(f"family {family.label} needs b != 0")
    if not family.tag.needs_root:
        return eval_v(family, z, params)
    scalar = np.ndim(z) == 0
    out = []
    with mpmath.workdps(ORACLE_DPS):
        b = mpmath.mpf(params.b)
        for zi in np.ravel(np.asarray(z, dtype=float)):
            p = _oracle_root(family, float(zi))
            if family.tag is FamilyTag.R:
                v = (-(p ** 2 - 2) - 2 * mpmath.log(p - 2)) / b
            else:
                k = 2 + mpmath.mpf(16) / 3 * mpmath.log(2) - mpmath.mpf(2) / 3 * mpmath.log(2 * abs(mpmath.mpf(family.c)))
                v = (-(p ** 2 + 2 * mpmath.log(abs(p - 2))) + k) / b
            out.append(float(v) + family.d)
    return out[0] if scalar else np.reshape(out, np.shape(z))


def quadrature_check(family: SolutionFamily, z0: float, z1: float, params: ModelParams) -> float:
    """|v(z1) - v(z0) - integral of v_z from z0 to z1|."""
    increment, _ = integrate.quad(lambda zz: eval_vz(family, zz, params), z0, z1, epsabs=1e-13, epsrel=1e-12)
    return abs(eval_v(family, z1, params) - eval_v(family, z0, params) - increment)


def gate_z_samples(family: SolutionFamily, n: int = 1000, margin: float = 1e-3,
                   span: float = 8.0) -> np.ndarray:
    """z samples inside the family's domain, `margin` away from z*."""
    match family.tag, family.chart:
        case (FamilyTag.U1, _) | (FamilyTag.U2, _) | (FamilyTag.U3, 2):
            zs = family.z_star()
            return np.linspace(zs + margin, zs + span, n)
        case FamilyTag.U3, 1:
            zs = family.z_star()
            return np.linspace(zs - span, zs - margin, n)
        case _:
            return np.linspace(-5.0, 4.5, n)


@dataclass(frozen=True)
class GateResult:
    family: str
    gate: str
    max_residual: float
    tolerance: float
    checked: int
    skipped: int = 0

    @property
    def status(self) -> str:
        if self.checked == 0:
            return "skip"
        return "pass" if self.max_residual <= self.tolerance else "fail"

    @property
    def passed(self) -> bool:
        """A gate that checked no point has not passed."""
        return self.status == "pass"


@dataclass(frozen=True)
class Discrepancy:
    subject: str
    printed: float | str
    verified: float | str
    difference: float | None = None
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.difference is not None and self.difference <= AGREEMENT_TOL


@dataclass
class ConformanceReport:
    params: ModelParams
    gates: list[GateResult] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.gates)

    @property
    def failures(self) -> list[GateResult]:
        return [g for g in self.gates if not g.passed]

    def disagreements(self) -> list[Discrepancy]:
        return [d for d in self.discrepancies if not d.agrees]

    def as_rows(self) -> list[dict]:
        rows = [{"kind": "gate", "subject": f"{g.family}/{g.gate}", "value": g.max_residual,
                 "tolerance": g.tolerance, "checked": g.checked, "skipped": g.skipped,
                 "status": g.status} for g in self.gates]
        rows += [{"kind": "discrepancy", "subject": d.subject, "printed": d.printed,
                  "verified": d.verified, "difference": d.difference,
                  "status": "agrees" if d.agrees else "differs", "note": d.note} for d in self.discrepancies]
        return rows


def _interior_mask(family: SolutionFamily, S, t, params: ModelParams, margin: float):
    positive = S > 0
    if family.tag.is_bounded_below or (family.tag is FamilyTag.U3 and family.chart == 2):
        return positive & (S >= boundary_price(family, params, t) * (1.0 + margin))
    if family.tag is FamilyTag.U3 and family.chart == 1:
        return positive & (S <= boundary_price(family, params, t) * (1.0 - margin))
    return positive


def pde_gate(family: SolutionFamily, params: ModelParams, n_S: int = 200, n_t: int = 50,
             S_range=(1e-2, 5.0), t_range=(0.0, 0.5), margin: float = 1e-3,
             tolerance: float = PDE_TOL) -> GateResult:
    """Max |FreySDE residual| of the analytic jets over an (S, t) grid."""
    S, t = np.meshgrid(np.linspace(*S_range, n_S), np.linspace(*t_range, n_t))
    mask = _interior_mask(family, S, t, params, margin)
    checked = int(mask.sum())
    worst = 0.0
    if checked:
        jet = eval_jet(family, S[mask], t[mask], params)
        worst = float(np.max(np.abs(pde_residual(ModelKind.frey(), params, jet))))
    logger.info("PDE gate %s: max residual %.3e over %d points, %d skipped",
                family.label, worst, checked, mask.size - checked)
    return GateResult(family.label, "pde", worst, tolerance, checked, mask.size - checked)


def ode_gate(family: SolutionFamily, params: ModelParams, n: int = 1000, margin: float = 1e-3,
             tolerance: float = ODE_TOL) -> GateResult:
    """Max |reduced ODE residual| of (v, v_z, v_zz) on z samples, W taken from the root."""
    z = gate_z_samples(family, n, margin)
    v, v_z, v_zz = reduced_jet(family, z, params)
    res = reduced_residual(v, v_z, v_zz, ReductionParams.from_model(params), w=eval_w(family, z, params))
    worst = float(np.max(np.abs(res)))
    logger.info("ODE gate %s: max residual %.3e over %d samples", family.label, worst, n)
    return GateResult(family.label, "ode", worst, tolerance, n)


def _printed_form_discrepancy(family: SolutionFamily, params: ModelParams, n: int = 40) -> Discrepancy:
    z = gate_z_samples(family, n, margin=1e-2, span=4.0)
    verified = oracle_v(family, z, params) - family.d
    printed = printed_v(family, z, params)
    diff = np.abs(printed - verified)
    worst = float(np.max(diff)) if np.all(np.isfinite(diff)) else math.inf
    if worst > AGREEMENT_TOL:
        logger.warning("printed v-form of %s differs from the root oracle by %.3e", family.label, worst)
    return Discrepancy(f"v-form {family.label}", float(printed[n // 2]), float(verified[n // 2]), worst,
                       "printed closed form against extended-precision roots")


def _asymptotic_discrepancies(params: ModelParams) -> list[Discrepancy]:
    out = []
    cases = [
        (SolutionFamily(FamilyTag.U1, c=-20.0), 1e3, 2, "U1 linear term, sign of log(2/|c|)"),
        (SolutionFamily(FamilyTag.U3, c=-1.0, chart=1), 1e-3, 1, "U3 chart 1 leading term as S -> 0"),
    ]
    for family, S, order, note in cases:
        exact = eval_u(family, S, 0.0, params)
        derived = eval_asymptotic(family, S, 0.0, params, order, ExpansionSource.DERIVED)
        printed = eval_asymptotic(family, S, 0.0, params, order, ExpansionSource.PRINTED)
        out.append(Discrepancy(f"asymptotic {family.label} (S={S:g})", abs(exact - printed), abs(exact - derived),
                               abs(printed - derived), f"{note}; values are distances to u"))
    return out


def _reduction_discrepancies(params: ModelParams) -> list[Discrepancy]:
    rp = ReductionParams.from_model(params)
    out = []

    verified = uniformized_quadrature(2.5, 3.0, rp, Branch.PLUS)
    out.append(Discrepancy("quadrature sign", -verified, quadrature_closed_form(2.5, 3.0),
                           abs(-verified - quadrature_closed_form(2.5, 3.0)),
                           "printed integrals carry +2 q xi; dz = dy/w gives -2 q xi"))

    constants = constant_solutions(rp)
    printed_constants = "complex" if rp.q < 0 else f"{(rp.xi + math.sqrt(rp.q)) / rp.b}, {(rp.xi - math.sqrt(rp.q)) / rp.b}"
    out.append(Discrepancy("constant slopes", printed_constants,
                           ", ".join(f"{v:g}" for v in constants.values[1:]) or "none", None,
                           "roots of F(y, 0) are (xi +- sqrt(-xi q))/b"))

    printed_w = -(1.0 / rp.b) * (1.0 - rp.xi * rp.q / 4.0)
    verified_w = branch_point_value(rp)
    out.append(Discrepancy("branch point value w(zeta_2)", printed_w, verified_w, abs(printed_w - verified_w),
                           "f at the radicand zero is -(1/b)(1 + xi q/4)"))
    return out


def default_families() -> list[SolutionFamily]:
    return [
        SolutionFamily(FamilyTag.R, c=0.5),
        SolutionFamily(FamilyTag.U1, c=-0.5),
        SolutionFamily(FamilyTag.U2, c=-0.5),
        SolutionFamily(FamilyTag.U3, c=-0.5, chart=1),
        SolutionFamily(FamilyTag.U3, c=-0.5, chart=2),
    ]


def conformance_report(params: ModelParams, families: list[SolutionFamily] | None = None,
                       n_S: int = 200, n_t: int = 50, n_z: int = 1000,
                       S_range=(1e-2, 5.0), t_range=(0.0, 0.5), margin: float = 1e-3,
                       include_printed: bool = True) -> ConformanceReport:
    """
    Runs the PDE and reduced-ODE gates for each family and, with include_printed,
    compares the published formulas with the verified ones.

    Raises:
        ZeroB: b = 0.
    """
    if params.b == 0:
        raise ZeroB("the exact families need b = omega*rho != 0")
    families = families or default_families()
    report = ConformanceReport(params)
    for family in families:
        if not family.tag.is_nonlinear and family.tag is not FamilyTag.TRIVIAL_LINEAR:
            raise ValidationError(f"family {family.label} has no conformance gates")
        report.gates.append(pde_gate(family, params, n_S, n_t, S_range, t_range, margin))
        report.gates.append(ode_gate(family, params, n_z, margin))
        if include_printed and family.tag.needs_root:
            try:
                report.discrepancies.append(_printed_form_discrepancy(family, params))
            except Unsupported:
                logger.debug("no printed form to compare for %s", family.label)
    if include_printed:
        report.discrepancies.extend(_asymptotic_discrepancies(params))
        report.discrepancies.extend(_reduction_discrepancies(params))
    for gate in report.failures:
        if gate.checked == 0:
            logger.warning("gate %s/%s checked no point", gate.family, gate.gate)
        else:
            logger.warning("gate %s/%s failed: %.3e > %.1e", gate.family, gate.gate, gate.max_residual, gate.tolerance)
    return report
