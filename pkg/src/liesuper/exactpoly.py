"""Exact sparse multivariate polynomial algebra over the rationals.

Everything in this module is exact: coefficients are ``fractions.Fraction``
values, so Lie brackets, prolongations and rank computations carry no
rounding error whatsoever.  Polynomials are stored sparsely as a map from
dense exponent tuples to nonzero coefficients; the zero polynomial is the
empty map.  Values are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "CoordinateMismatch",
    "Polynomial",
    "RationalFunction",
    "VectorField",
    "lie_bracket",
    "prolong",
    "derive_along",
    "rank_at",
    "in_span",
]


class CoordinateMismatch(ValueError):
    """Raised when two objects live on different coordinate lists."""


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational scalar, got {type(c).__name__}")


def _check_coords(a, b) -> None:
    if a.coords != b.coords:
        raise CoordinateMismatch(f"coordinate lists differ: {a.coords} vs {b.coords}")


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one non-negative integer per coordinate)
    to nonzero ``Fraction`` coefficients.  Canonical form is enforced on
    construction: zero coefficients are dropped, so two polynomials are equal
    iff their term maps are identical.
    """

    __slots__ = ("coords", "terms")

    def __init__(self, coords: Sequence[str], terms: dict | None = None):
        coords = tuple(coords)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            n = len(coords)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(
                        f"exponent vector {exps} has length {len(exps)}, expected {n}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = _as_fraction(coeff)
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, coords: Sequence[str]) -> "Polynomial":
        return cls(coords)

    @classmethod
    def constant(cls, c: Scalar, coords: Sequence[str]) -> "Polynomial":
        coords = tuple(coords)
        return cls(coords, {(0,) * len(coords): _as_fraction(c)})

    @classmethod
    def variable(cls, name: str, coords: Sequence[str]) -> "Polynomial":
        coords = tuple(coords)
        if name not in coords:
            raise CoordinateMismatch(f"unknown coordinate {name!r} (coords {coords})")
        exps = tuple(1 if c == name else 0 for c in coords)
        return cls(coords, {exps: Fraction(1)})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_coords(self, other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Polynomial(self.coords, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.coords, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_coords(self, other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial(self.coords, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.coords)
        return Polynomial(self.coords, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(1, self.coords)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and evaluation -------------------------------------------

    def diff(self, name: str) -> "Polynomial":
        """Exact partial derivative with respect to the named coordinate."""
        try:
            i = self.coords.index(name)
        except ValueError:
            raise CoordinateMismatch(
                f"unknown coordinate {name!r} (coords {self.coords})"
            ) from None
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            k = exps[i]
            if k == 0:
                continue
            e = list(exps)
            e[i] = k - 1
            out[tuple(e)] = c * k
        return Polynomial(self.coords, out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        """Evaluate exactly at a rational point."""
        if len(point) != len(self.coords):
            raise ValueError(
                f"point has {len(point)} entries, expected {len(self.coords)}"
            )
        pt = [_as_fraction(p) for p in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for base, k in zip(pt, exps):
                if k:
                    v *= base**k
            total += v
        return total

    def eval_float(self, point: Sequence[float]) -> float:
        """Evaluate in double precision (for numeric consumers)."""
        total = 0.0
        for exps, c in self.terms.items():
            v = float(c)
            for base, k in zip(point, exps):
                if k:
                    v *= base**k
            total += v
        return total

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the lexicographically largest exponent vector."""
        if not self.terms:
            return Fraction(0)
        return self.terms[max(self.terms)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coords == other.coords and self.terms == other.terms

    def __hash__(self):
        return hash((self.coords, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            factors = [
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.coords, exps)
                if k
            ]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


class RationalFunction:
    """Quotient of two polynomials; equality via cross-multiplication.

    The denominator is normalised so that its leading coefficient (in
    lexicographic term order) is positive.  No gcd cancellation is attempted:
    equality testing ``p/q == r/s  iff  p*s - r*q == 0`` makes it unnecessary.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(1, num.coords)
        _check_coords(num, den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in RationalFunction")
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def coords(self) -> tuple[str, ...]:
        return self.num.coords

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num.scale(other), self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __repr__(self) -> str:
        return f"({self.num}) / ({self.den})"


class VectorField:
    """Polynomial vector field: one polynomial component per coordinate."""

    __slots__ = ("components", "coords")

    def __init__(self, components: Iterable[Polynomial], coords: Sequence[str]):
        components = tuple(components)
        coords = tuple(coords)
        if len(components) != len(coords):
            raise CoordinateMismatch(
                f"{len(components)} components for {len(coords)} coordinates"
            )
        for comp in components:
            if comp.coords != coords:
                raise CoordinateMismatch(
                    f"component coords {comp.coords} differ from field coords {coords}"
                )
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, coords: Sequence[str]) -> "VectorField":
        coords = tuple(coords)
        return cls([Polynomial.zero(coords)] * len(coords), coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        if not isinstance(other, VectorField):
            return NotImplemented
        _check_coords(self, other)
        return VectorField(
            [a + b for a, b in zip(self.components, other.components)], self.coords
        )

    def __neg__(self) -> "VectorField":
        return VectorField([-c for c in self.components], self.coords)

    def __sub__(self, other: "VectorField") -> "VectorField":
        if not isinstance(other, VectorField):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "VectorField":
        return VectorField([p.scale(c) for p in self.components], self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coords == other.coords and self.components == other.components

    def apply(self, p: Polynomial) -> Polynomial:
        """Lie derivative of a polynomial: X(p) = sum_i X^i dp/dx_i."""
        _check_coords(self, p)
        out = Polynomial.zero(self.coords)
        for comp, name in zip(self.components, self.coords):
            if not comp.is_zero:
                out = out + comp * p.diff(name)
        return out

    def eval(self, point: Sequence[Scalar]) -> list[Fraction]:
        return [c.eval(point) for c in self.components]

    def __repr__(self) -> str:
        parts = [
            f"({comp}) d/d{name}"
            for comp, name in zip(self.components, self.coords)
            if not comp.is_zero
        ]
        return " + ".join(parts) if parts else "0"


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Commutator [X, Y] with components X(Y^i) - Y(X^i); exact."""
    _check_coords(X, Y)
    return VectorField(
        [X.apply(Yc) - Y.apply(Xc) for Xc, Yc in zip(X.components, Y.components)],
        X.coords,
    )


def prolonged_coords(coords: Sequence[str], copies: int) -> tuple[str, ...]:
    """Coordinate list of the diagonal prolongation, base-block major.

    For base coordinates (x, v) and m copies this is the fixed order
    (x0, ..., x_{m-1}, v0, ..., v_{m-1}); all downstream index conventions
    rely on it.
    """
    if copies <= 0:
        raise ValueError("copies must be a positive integer")
    return tuple(f"{c}{a}" for c in coords for a in range(copies))


def prolong(X: VectorField, copies: int) -> VectorField:
    """Diagonal prolongation of X to ``copies`` labelled copies of its space.

    The prolonged field acts on copy ``a`` exactly as X acts on its base
    space, with every base coordinate ``c`` renamed to ``c{a}``.
    """
    new_coords = prolonged_coords(X.coords, copies)
    n = len(X.coords)
    width = len(new_coords)

    def translate(p: Polynomial, a: int) -> Polynomial:
        terms = {}
        for exps, c in p.terms.items():
            new_exps = [0] * width
            for j, k in enumerate(exps):
                new_exps[j * copies + a] = k
            terms[tuple(new_exps)] = c
        return Polynomial(new_coords, terms)

    components = [Polynomial.zero(new_coords)] * width
    for j in range(n):
        for a in range(copies):
            components[j * copies + a] = translate(X.components[j], a)
    return VectorField(components, new_coords)


def derive_along(X: VectorField, F: RationalFunction) -> RationalFunction:
    """Lie derivative X(F) of a rational function, by the exact quotient rule.

    F = p/q is a first integral of X iff the numerator of the result is the
    zero polynomial.
    """
    if X.coords != F.coords:
        raise CoordinateMismatch(
            f"coordinate lists differ: {X.coords} vs {F.coords}"
        )
    p, q = F.num, F.den
    return RationalFunction(q * X.apply(p) - p * X.apply(q), q * q)


def _fraction_free_rank(rows: list[list[Fraction]]) -> int:
    """Exact rank by Bareiss fraction-free elimination on cleared rows."""
    if not rows:
        return 0
    # clear denominators row by row; rank is invariant under row scaling
    mat: list[list[int]] = []
    for row in rows:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        mat.append([int(x * lcm) for x in row])
    m, n = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot_row = None
        for r in range(rank, m):
            if mat[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pivot = mat[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                mat[r][c] = (pivot * mat[r][c] - mat[r][col] * mat[rank][c]) // prev
            mat[r][col] = 0
        prev = pivot
        rank += 1
        if rank == m:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a > 0 else -a


def rank_at(fields: Sequence[VectorField], point: Sequence[Scalar]) -> int:
    """Exact rank of the field components matrix at a rational point."""
    if not fields:
        return 0
    coords = fields[0].coords
    for f in fields[1:]:
        if f.coords != coords:
            raise CoordinateMismatch("fields live on different coordinate lists")
    if len(point) != len(coords):
        raise ValueError(
            f"point has {len(point)} entries, expected {len(coords)}"
        )
    rows = [f.eval(point) for f in fields]
    return _fraction_free_rank(rows)


def in_span(
    X: VectorField, basis: Sequence[VectorField]
) -> list[Fraction] | None:
    """Exact coefficients c with X = sum c_i basis_i, or None if not in span.

    The linear system runs over the union of (component, monomial) slots
    appearing in X or the basis, and is solved exactly over the rationals.
    """
    coords = X.coords
    for f in basis:
        _check_coords(X, f)
    slots: list[tuple[int, tuple[int, ...]]] = []
    seen = set()
    for f in list(basis) + [X]:
        for j, comp in enumerate(f.components):
            for exps in comp.terms:
                key = (j, exps)
                if key not in seen:
                    seen.add(key)
                    slots.append(key)
    if not slots:
        return [Fraction(0)] * len(basis)  # everything zero

    # rows: one equation per slot;  A c = b
    k = len(basis)
    A = [
        [basis[i].components[j].terms.get(exps, Fraction(0)) for i in range(k)]
        for (j, exps) in slots
    ]
    b = [X.components[j].terms.get(exps, Fraction(0)) for (j, exps) in slots]

    # exact Gaussian elimination with back-substitution
    m = len(A)
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(k):
        pr = None
        for r in range(row, m):
            if A[r][col]:
                pr = r
                break
        if pr is None:
            continue
        A[row], A[pr] = A[pr], A[row]
        b[row], b[pr] = b[pr], b[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        b[row] = b[row] * inv
        for r in range(m):
            if r != row and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
                b[r] = b[r] - f * b[row]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    # consistency: zero rows of A must have zero rhs
    for r in range(m):
        if all(x == 0 for x in A[r]) and b[r] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for r, c in pivots:
        coeffs[c] = b[r]
    # free columns default to zero; verify the candidate reproduces X exactly
    combo = VectorField.zero(coords)
    for ci, f in zip(coeffs, basis):
        if ci:
            combo = combo + f.scale(ci)
    if combo == X:
        return coeffs
    return None
