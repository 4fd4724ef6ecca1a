"""Nonlinear superposition of four particular solutions.

The central objects are the functions F_abc and G_abcd of the slot states,
the two first integrals Lambda1, Lambda2 built from them on the 5-copy
prolonged space, and the closed superposition formula expressing the unknown
solution x0 (and, by inversion, v0) from four particular solutions and two
constants.  The formula is an exact algebraic identity wherever its
denominators do not vanish; all guards here are numeric because genericity
is an open dense condition, not a checkable predicate.

Slot convention: slot 0 is the unknown/target; slots 1..4 are the particular
solutions in user-given order.  No automatic reordering is attempted —
degeneracy is reported, never repaired, since silently permuting slots would
change the meaning of the constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactpoly import Polynomial, RationalFunction, VectorField, derive_along, prolong, prolonged_coords
from .algebra import Report, builtin_fields
from .odeint import Trajectory

__all__ = [
    "EPS_GEN",
    "Degenerate",
    "State",
    "f_abc",
    "g_abcd",
    "genericity_product",
    "lambda_integrals",
    "recover_v0",
    "superpose_value",
    "fit_constants",
    "SuperposeProblem",
    "ReconstructionResult",
    "reconstruct",
    "f_abc_polynomial",
    "lambda_rational_functions",
    "verify_lambda_annihilation",
]

# absolute guard threshold, applied after scaling by the magnitude of the
# F-values entering the denominator
EPS_GEN = 1e-10

State = tuple[float, float]  # (x, v)


class Degenerate(ArithmeticError):
    """A denominator of the superposition machinery (numerically) vanished."""

    def __init__(self, which: str, value: float, t: float | None = None):
        self.which = which
        self.value = value
        self.t = t
        at = f" at t={t}" if t is not None else ""
        super().__init__(f"degenerate configuration: {which} = {value:.3e}{at}")


def f_abc(sa: State, sb: State, sc: State) -> float:
    """F(a,b,c) of three slot states; totally antisymmetric."""
    xa, va = sa
    xb, vb = sb
    xc, vc = sc
    return (
        va * (xc - xb)
        + vb * (xa - xc)
        + vc * (xb - xa)
        + (xa - xb) * (xb - xc) * (xc - xa)
    )


def g_abcd(sa: State, sb: State, sc: State, sd: State) -> float:
    """G(a,b,c,d) of four slot states (the superposition numerator block)."""
    xa, va = sa
    xb, vb = sb
    xc, vc = sc
    xd, vd = sd
    return xa * (
        (vd - vc) * xb + (vb - vd) * xc + (xb - xc) * xb * xc + (xc - xb) * xa * xd
    ) + xd * (
        (vc - va) * xb + (va - vb) * xc + (xc - xb) * xb * xc + (xb - xc) * xa * xd
    )


def genericity_product(s: Sequence[State]) -> float:
    """F123*F124*F134*F234 over the four particular slots (1-indexed input)."""
    s1, s2, s3, s4 = s
    return (
        f_abc(s1, s2, s3) * f_abc(s1, s2, s4) * f_abc(s1, s3, s4) * f_abc(s2, s3, s4)
    )


def _guard(which: str, den: float, scale: float, eps: float, t: float | None):
    if abs(den) <= eps * max(1.0, scale):
        raise Degenerate(which, den, t)


def lambda_integrals(
    p: Sequence[State], eps_gen: float = EPS_GEN, t: float | None = None
) -> tuple[float, float]:
    """The two first integrals of a 5-slot tuple (slot 0 first).

    Lambda1 = F431*F210/(F421*F310) and Lambda2 = F431*F420/(F421*F430).
    Raises Degenerate naming the vanishing denominator.
    """
    s0, s1, s2, s3, s4 = p
    F431 = f_abc(s4, s3, s1)
    F421 = f_abc(s4, s2, s1)
    F210 = f_abc(s2, s1, s0)
    F310 = f_abc(s3, s1, s0)
    F420 = f_abc(s4, s2, s0)
    F430 = f_abc(s4, s3, s0)
    den1 = F421 * F310
    den2 = F421 * F430
    _guard("F421*F310", den1, abs(F431 * F210), eps_gen, t)
    _guard("F421*F430", den2, abs(F431 * F420), eps_gen, t)
    return F431 * F210 / den1, F431 * F420 / den2


def recover_v0(
    s: Sequence[State],
    x0: float,
    lam1: float,
    eps_gen: float = EPS_GEN,
    t: float | None = None,
) -> float:
    """Invert Lambda1 for the velocity of the unknown slot.

    ``s`` holds the four particular slot states (1..4); ``x0`` is the
    position of slot 0.
    """
    s1, s2, s3, s4 = s
    x1, v1 = s1
    x2, v2 = s2
    x3, v3 = s3
    F431 = f_abc(s4, s3, s1)
    F421 = f_abc(s4, s2, s1)
    num = (
        v1 * (x2 - x0) + v2 * (x0 - x1) + (x1 - x0) * (x0 - x2) * (x2 - x1)
    ) * F431 + (
        v3 * (x1 - x0) + v1 * (x0 - x3) + (x0 - x1) * (x1 - x3) * (x3 - x0)
    ) * F421 * lam1
    den = (x2 - x1) * F431 + (x1 - x3) * F421 * lam1
    _guard("v0-denominator", den, abs(num), eps_gen, t)
    return num / den


def superpose_value(
    s: Sequence[State],
    lam1: float,
    lam2: float,
    eps_gen: float = EPS_GEN,
    t: float | None = None,
) -> float:
    """Position of the unknown slot from four particular states and constants."""
    s1, s2, s3, s4 = s
    F431 = f_abc(s4, s3, s1)
    F421 = f_abc(s4, s2, s1)
    F124 = f_abc(s1, s2, s4)
    F324 = f_abc(s3, s2, s4)
    F412 = f_abc(s4, s1, s2)
    F312 = f_abc(s3, s1, s2)
    G3124 = g_abcd(s3, s1, s2, s4)
    G2134 = g_abcd(s2, s1, s3, s4)
    num = s2[0] * F431 - G3124 * lam2 - G2134 * lam1 + s3[0] * F421 * lam1 * lam2
    terms = (
        F431,
        (F124 - F324) * lam1,
        (F412 - F312) * lam2,
        lam1 * lam2 * F421,
    )
    den = sum(terms)
    _guard("superposition denominator", den, max(abs(x) for x in terms), eps_gen, t)
    return num / den


def fit_constants(
    target: State,
    s: Sequence[State],
    eps_gen: float = EPS_GEN,
    t: float | None = None,
) -> tuple[float, float]:
    """Constants reproducing the target state: the first-integral values."""
    return lambda_integrals([target, *s], eps_gen=eps_gen, t=t)


@dataclass
class SuperposeProblem:
    """Four particular trajectories plus either constants or a target state.

    Exactly one of ``constants`` and ``target`` must be given.  When fitting
    against a target initial state, ``fit_time`` selects the grid time used
    (default: the first grid point).
    """

    trajectories: Sequence[Trajectory]
    constants: tuple[float, float] | None = None
    target: State | None = None
    fit_time: float | None = None
    eps_gen: float = EPS_GEN

    def __post_init__(self):
        if len(self.trajectories) != 4:
            raise ValueError("exactly four particular trajectories are required")
        grid = self.trajectories[0].times
        for traj in self.trajectories[1:]:
            if traj.times != grid:
                raise ValueError("all four trajectories must share one time grid")
        if (self.constants is None) == (self.target is None):
            raise ValueError("give either constants or a target state, not both")


@dataclass
class ReconstructionResult:
    """Reconstructed trajectory plus the bookkeeping a report needs."""

    trajectory: Trajectory
    lam1: float
    lam2: float
    min_denominator: float

    def to_dict(self) -> dict:
        return {
            "lam1": self.lam1,
            "lam2": self.lam2,
            "min_denominator": self.min_denominator,
        }


def _slot_states(trajectories: Sequence[Trajectory], i: int) -> list[State]:
    return [traj.states[i] for traj in trajectories]


def reconstruct(problem: SuperposeProblem) -> ReconstructionResult:
    """Rebuild the unknown solution on the whole grid from four particular ones.

    The x row comes from the superposition formula at fixed constants, the v
    row from the exact inversion of Lambda1 (not finite differences).  The
    first grid time at which a guard trips is reported via Degenerate(t).
    """
    trajs = problem.trajectories
    grid = trajs[0].times
    eps = problem.eps_gen

    if problem.constants is not None:
        lam1, lam2 = problem.constants
    else:
        if problem.fit_time is None:
            i_fit = 0
        else:
            try:
                i_fit = grid.index(problem.fit_time)
            except ValueError:
                raise ValueError(f"fit_time {problem.fit_time} is not a grid time")
        lam1, lam2 = fit_constants(
            problem.target, _slot_states(trajs, i_fit), eps_gen=eps, t=grid[i_fit]
        )

    states: list[State] = []
    min_den = float("inf")
    for i, t in enumerate(grid):
        s = _slot_states(trajs, i)
        s1, s2, s3, s4 = s
        F431 = f_abc(s4, s3, s1)
        F421 = f_abc(s4, s2, s1)
        den = (
            F431
            + (f_abc(s1, s2, s4) - f_abc(s3, s2, s4)) * lam1
            + (f_abc(s4, s1, s2) - f_abc(s3, s1, s2)) * lam2
            + lam1 * lam2 * F421
        )
        min_den = min(min_den, abs(den))
        x0 = superpose_value(s, lam1, lam2, eps_gen=eps, t=t)
        v0 = recover_v0(s, x0, lam1, eps_gen=eps, t=t)
        states.append((x0, v0))

    traj = Trajectory(list(grid), states, tol=trajs[0].tol, status="reconstructed")
    return ReconstructionResult(traj, lam1, lam2, min_den)


# ---------------------------------------------------------------------------
# exact symbolic side: Lambda1, Lambda2 on the 10 prolongation coordinates


def _slot_vars(coords, a: int) -> tuple[Polynomial, Polynomial]:
    return (
        Polynomial.variable(f"x{a}", coords),
        Polynomial.variable(f"v{a}", coords),
    )


def f_abc_polynomial(a: int, b: int, c: int, copies: int = 5) -> Polynomial:
    """F(a,b,c) as an exact polynomial on the prolongation coordinates."""
    coords = prolonged_coords(("x", "v"), copies)
    xa, va = _slot_vars(coords, a)
    xb, vb = _slot_vars(coords, b)
    xc, vc = _slot_vars(coords, c)
    return (
        va * (xc - xb)
        + vb * (xa - xc)
        + vc * (xb - xa)
        + (xa - xb) * (xb - xc) * (xc - xa)
    )


def lambda_rational_functions() -> tuple[RationalFunction, RationalFunction]:
    """Lambda1, Lambda2 as exact rational functions on (x0..x4, v0..v4)."""
    F431 = f_abc_polynomial(4, 3, 1)
    F421 = f_abc_polynomial(4, 2, 1)
    lam1 = RationalFunction(F431 * f_abc_polynomial(2, 1, 0), F421 * f_abc_polynomial(3, 1, 0))
    lam2 = RationalFunction(F431 * f_abc_polynomial(4, 2, 0), F421 * f_abc_polynomial(4, 3, 0))
    return lam1, lam2


def verify_lambda_annihilation(
    all_fields: bool = False,
    fields: Sequence[VectorField] | None = None,
) -> Report:
    """Exact check that the prolonged fields annihilate Lambda1 and Lambda2.

    The generating fields X1, X2 suffice (the rest of the algebra is
    bracket-generated from them); ``all_fields=True`` checks all eight.
    Zero tolerance: the Lie-derivative numerator must be the zero polynomial.
    """
    basis = list(fields) if fields is not None else builtin_fields("sl3-family")
    which = range(8) if all_fields else (0, 1)
    lam1, lam2 = lambda_rational_functions()
    report = Report("exact annihilation of Lambda1/Lambda2 by prolonged fields")
    for idx in which:
        hat = prolong(basis[idx], 5)
        for j, lam in ((1, lam1), (2, lam2)):
            deriv = derive_along(hat, lam)
            report.add(
                f"X{idx+1}^(Lambda{j})",
                "zero numerator",
                "zero" if deriv.num.is_zero else f"{len(deriv.num.terms)} terms",
                deriv.num.is_zero,
            )
    return report
