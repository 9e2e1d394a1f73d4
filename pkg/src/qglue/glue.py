"""Fibre products of truncated Toeplitz pictures over the circle.

A FibrePair is one element of the glued algebra: two operator legs together
with their exact boundary symbols and an integer twist N, subject to the
membership rule

    U^N * sym0 == sym1        (checked exactly at construction).

Twist 0 is the glued function algebra itself; twist N is the degree-N
bimodule over it. chi produces the canonical range projections, psi_iso
normalizes a twist away (see ORIENTATION), and iota embeds the symbolic
glued-disc algebra into the doubled picture whose degree parts are
FibrePairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np

from .circle import EXACT, BiLaurent, LaurentPoly, w_map
from .coefficients import CoefPoly, ONE, S as S_COEF
from .errors import DimensionMismatch, SymbolMismatch
from .ncpoly import NCPoly
from .opnum import (
    ParamSet,
    TruncOp,
    diag_op,
    disc_rep,
    evaluate,
    identity,
    inv_sqrt_psd,
    pi_rep,
    shift,
)

ORIENTATION = (
    "psi_iso removes a twist by shifting the leg whose symbol carries the "
    "U^N factor: the right leg for N >= 0, the left leg for N < 0; the image "
    "of the twist-N module is then supported on chi(-N). Index pairings of "
    "degree-N idempotents therefore carry the sign recorded in "
    "kpair.ORIENTATION_SIGN."
)


def _as_exact_symbol(sym) -> LaurentPoly:
    if isinstance(sym, LaurentPoly):
        if sym.mode not in (None, EXACT):
            raise SymbolMismatch("fibre-pair symbols must be exact")
        return sym
    if isinstance(sym, (CoefPoly, Rational)):
        return LaurentPoly.exact({0: sym})
    raise TypeError(f"bad symbol of type {type(sym).__name__}")


class FibrePair:
    """Two truncated operator legs with matching exact boundary symbols."""

    __slots__ = ("t0", "t1", "sym0", "sym1", "twist")

    def __init__(self, t0: TruncOp, t1: TruncOp, sym0, sym1, twist: int = 0):
        if t0.lattice != "N" or t1.lattice != "N":
            raise DimensionMismatch("fibre-pair legs live on the natural lattice")
        t0._compat(t1)
        sym0 = _as_exact_symbol(sym0)
        sym1 = _as_exact_symbol(sym1)
        twist = int(twist)
        mismatch = sym0.shift(twist) - sym1
        if mismatch:
            k = sorted(mismatch.terms)[0]
            raise SymbolMismatch(
                f"twist-{twist} membership U^{twist} sym0 == sym1 fails first "
                f"at U^{k} (difference {mismatch.terms[k]})"
            )
        self.t0 = t0
        self.t1 = t1
        self.sym0 = sym0
        self.sym1 = sym1
        self.twist = twist

    @property
    def d(self) -> int:
        return self.t0.d

    def symbols_zero(self) -> bool:
        return self.sym0.is_zero() and self.sym1.is_zero()

    def _join_twist(self, other: "FibrePair") -> int:
        if self.twist == other.twist:
            return self.twist
        if self.symbols_zero():
            return other.twist
        if other.symbols_zero():
            return self.twist
        raise SymbolMismatch(
            f"cannot add twist {self.twist} to twist {other.twist} with "
            "nonzero symbols"
        )

    def __add__(self, other):
        if not isinstance(other, FibrePair):
            return NotImplemented
        twist = self._join_twist(other)
        return FibrePair(
            self.t0 + other.t0,
            self.t1 + other.t1,
            self.sym0 + other.sym0,
            self.sym1 + other.sym1,
            twist,
        )

    def __sub__(self, other):
        if not isinstance(other, FibrePair):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return FibrePair(-self.t0, -self.t1, -self.sym0, -self.sym1, self.twist)

    def __matmul__(self, other):
        if not isinstance(other, FibrePair):
            return NotImplemented
        return FibrePair(
            self.t0 @ other.t0,
            self.t1 @ other.t1,
            self.sym0 * other.sym0,
            self.sym1 * other.sym1,
            self.twist + other.twist,
        )

    def scale(self, value, exact=None) -> "FibrePair":
        """Scale both legs by a number; `exact` must supply the matching
        exact scalar unless the symbols are zero."""
        if exact is None:
            if isinstance(value, (int, Fraction)):
                exact = value
            elif not self.symbols_zero():
                raise SymbolMismatch(
                    "scaling nonzero symbols needs the exact scalar as well"
                )
            else:
                exact = 0
        return FibrePair(
            complex(value) * self.t0,
            complex(value) * self.t1,
            self.sym0 * exact,
            self.sym1 * exact,
            self.twist,
        )

    def __mul__(self, value):
        if isinstance(value, FibrePair):
            return NotImplemented
        if isinstance(value, (int, Fraction)):
            return self.scale(value, value)
        return self.scale(value)

    __rmul__ = __mul__

    def star(self) -> "FibrePair":
        return FibrePair(
            self.t0.adjoint(),
            self.t1.adjoint(),
            self.sym0.star(),
            self.sym1.star(),
            -self.twist,
        )

    def __repr__(self):
        return (
            f"FibrePair(d={self.d}, twist={self.twist}, "
            f"sym0={self.sym0}, sym1={self.sym1})"
        )


def zero_pair(d: int, twist: int = 0) -> FibrePair:
    z = TruncOp(np.zeros((d, d)), 0, "N")
    empty = LaurentPoly.exact({})
    return FibrePair(z, z, empty, empty, twist)


def unit_pair(d: int) -> FibrePair:
    one = identity(d)
    sym = LaurentPoly.exact({0: 1})
    return FibrePair(one, one, sym, sym, 0)


# -- canonical projections and the twist normalization -------------------------


def chi(N: int, d: int) -> FibrePair:
    """Range projection of the twist-N module inside the glued algebra:
    one leg is the shift-range projection S^{|N|} S*^{|N|}, the other the
    unit; both symbols are 1."""
    k = abs(int(N))
    if k >= d:
        raise DimensionMismatch(f"need d > |N|, got d={d}, N={N}")
    proj = diag_op([0.0] * k + [1.0] * (d - k))
    one = identity(d)
    sym = LaurentPoly.exact({0: 1})
    if N >= 0:
        return FibrePair(proj, one, sym, sym, 0)
    return FibrePair(one, proj, sym, sym, 0)


def psi_iso(pair: FibrePair) -> FibrePair:
    """Normalize the twist to zero by shifting the leg whose symbol carries
    the U^N factor (see ORIENTATION). The image of the twist-N module is
    supported on chi(-N)."""
    N = pair.twist
    if N == 0:
        return pair
    k = abs(N)
    back = shift(pair.d) ** k
    back = back.adjoint()
    if N > 0:
        return FibrePair(
            pair.t0, pair.t1 @ back, pair.sym0, pair.sym1.shift(-N), 0
        )
    return FibrePair(pair.t0 @ back, pair.t1, pair.sym0.shift(N), pair.sym1, 0)


def psi_inverse(pair: FibrePair, N: int) -> FibrePair:
    """Partial inverse of psi_iso: reinstate twist N on a twist-0 element.
    On truncations psi_inverse(psi_iso(P), N) agrees with P on the trusted
    block only, since S*^k S^k is the unit minus a boundary defect."""
    if pair.twist != 0:
        raise SymbolMismatch("psi_inverse expects a twist-0 element")
    N = int(N)
    if N == 0:
        return pair
    k = abs(N)
    fwd = shift(pair.d) ** k
    if N > 0:
        return FibrePair(pair.t0, pair.t1 @ fwd, pair.sym0, pair.sym1.shift(N), N)
    return FibrePair(pair.t0 @ fwd, pair.t1, pair.sym0.shift(-N), pair.sym1, N)


# -- matrices of fibre pairs ----------------------------------------------------


def fp_matmul(
    A: Sequence[Sequence[FibrePair]], B: Sequence[Sequence[FibrePair]]
) -> list[list[FibrePair]]:
    n, k = len(A), len(A[0])
    k2, m = len(B), len(B[0])
    if k != k2:
        raise DimensionMismatch(f"shape mismatch: {n}x{k} @ {k2}x{m}")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] @ B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] @ B[t][j]
            row.append(acc)
        out.append(row)
    return out


# -- symbol maps ----------------------------------------------------------------


def symbol_map(x: NCPoly, exponents: Mapping[str, int | None]) -> LaurentPoly:
    """Boundary symbol of a symbolic element: each letter contributes the
    given power of U (None kills the word). Exact coefficients throughout."""
    letters = x.pres.letters
    out = LaurentPoly.exact({})
    for word, coef in x.terms().items():
        total = 0
        dead = False
        for i in word:
            e = exponents[letters[i]]
            if e is None:
                dead = True
                break
            total += e
        if dead:
            continue
        out = out + LaurentPoly.exact({total: coef})
    return out


def disc_symbol(x: NCPoly) -> LaurentPoly:
    """Symbol of a disc element: the letter goes to U, its star to U^{-1}."""
    letters = x.pres.letters
    if len(letters) != 2:
        raise ValueError("disc_symbol expects a one-disc presentation")
    return symbol_map(x, {letters[0]: 1, letters[1]: -1})


_S3_LEG_EXPONENTS = (
    {"a": 1, "a*": -1, "b": 0, "b*": 0},
    {"a": 0, "a*": 0, "b": 1, "b*": -1},
)


def s3_leg_symbol(x: NCPoly, leg: int) -> LaurentPoly:
    """Boundary symbol of a glued-disc element on one leg (a-side or b-side)."""
    return symbol_map(x, _S3_LEG_EXPONENTS[leg])


def s2_leg_symbol(x: NCPoly) -> LaurentPoly:
    """Boundary symbol of a quotient-sphere element (same on both legs)."""
    return symbol_map(x, {"A": None, "B": None, "R": 1, "R*": -1})


# -- leg assignments -------------------------------------------------------------


def s3_leg_assignment(leg: int, params: ParamSet, d: int | None = None) -> dict[str, TruncOp]:
    """Operators for one leg of the glued-disc picture: the a-copy acts as
    the q-disc and b is scalar on leg 0; mirrored on leg 1."""
    d = params.d if d is None else d
    one = identity(d)
    if leg == 0:
        z = disc_rep("z", params, d)
        return {"a": z, "a*": z.adjoint(), "b": one, "b*": one}
    if leg == 1:
        y = disc_rep("y", params, d)
        return {"a": one, "a*": one, "b": y, "b*": y.adjoint()}
    raise ValueError("leg must be 0 or 1")


def s2_leg_assignment(leg: int, params: ParamSet, d: int | None = None) -> dict[str, TruncOp]:
    """Operators for one leg of the quotient sphere: A and B are the two
    defect projections, only one of which survives on each leg."""
    d = params.d if d is None else d
    n = np.arange(d)
    zero = TruncOp(np.zeros((d, d)), 0, "N")
    if leg == 0:
        z = disc_rep("z", params, d)
        return {
            "A": diag_op(params.q**n),
            "B": zero,
            "R": z,
            "R*": z.adjoint(),
        }
    if leg == 1:
        y = disc_rep("y", params, d)
        return {
            "A": zero,
            "B": diag_op(params.p**n),
            "R": y,
            "R*": y.adjoint(),
        }
    raise ValueError("leg must be 0 or 1")


# -- the doubled picture ----------------------------------------------------------


class CSfpElement:
    """Element of the doubled picture: on each leg, a Laurent polynomial in
    the circle letter whose coefficients are operator-symbol pairs.

    legs[i] maps a circle exponent k to (operator, exact symbol of that
    operator). Multiplication is convolution in k with operator products and
    exact symbol products."""

    __slots__ = ("legs",)

    def __init__(self, leg0: Mapping[int, tuple], leg1: Mapping[int, tuple]):
        self.legs = (dict(leg0), dict(leg1))
        dims = set()
        for leg in self.legs:
            for k, (op, sym) in leg.items():
                if op.lattice != "N":
                    raise DimensionMismatch("doubled-picture coefficients live on N")
                dims.add(op.d)
                leg[k] = (op, _as_exact_symbol(sym))
        if len(dims) > 1:
            raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")

    def dim(self) -> int | None:
        for leg in self.legs:
            for op, _ in leg.values():
                return op.d
        return None

    @staticmethod
    def _merge(acc: dict, k: int, op: TruncOp, sym: LaurentPoly) -> None:
        if k in acc:
            cur_op, cur_sym = acc[k]
            acc[k] = (cur_op + op, cur_sym + sym)
        else:
            acc[k] = (op, sym)

    def __add__(self, other):
        if not isinstance(other, CSfpElement):
            return NotImplemented
        out = []
        for mine, theirs in zip(self.legs, other.legs):
            acc = dict(mine)
            for k, (op, sym) in theirs.items():
                self._merge(acc, k, op, sym)
            out.append(acc)
        return CSfpElement(*out)

    def __neg__(self):
        return CSfpElement(
            *[{k: (-op, -sym) for k, (op, sym) in leg.items()} for leg in self.legs]
        )

    def __sub__(self, other):
        if not isinstance(other, CSfpElement):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, CSfpElement):
            return NotImplemented
        out = []
        for mine, theirs in zip(self.legs, other.legs):
            acc: dict[int, tuple] = {}
            for ka, (opa, syma) in mine.items():
                for kb, (opb, symb) in theirs.items():
                    self._merge(acc, ka + kb, opa @ opb, syma * symb)
            out.append(acc)
        return CSfpElement(*out)

    def scale(self, value, exact) -> "CSfpElement":
        return CSfpElement(
            *[
                {k: (complex(value) * op, sym * exact) for k, (op, sym) in leg.items()}
                for leg in self.legs
            ]
        )

    def star(self) -> "CSfpElement":
        return CSfpElement(
            *[
                {-k: (op.adjoint(), sym.star()) for k, (op, sym) in leg.items()}
                for leg in self.legs
            ]
        )

    def leg_bilaurent(self, leg: int) -> BiLaurent:
        """(symbol x id) of one leg, as an exact two-torus element."""
        out = BiLaurent(mode=EXACT)
        for k, (_, sym) in self.legs[leg].items():
            for m, coef in sym.terms.items():
                key = (m, k)
                acc = out.terms.get(key)
                acc = coef if acc is None else acc + coef
                if acc:
                    out.terms[key] = acc
                else:
                    out.terms.pop(key, None)
        return out

    def w_compatible(self) -> bool:
        """The gluing compatibility: the torus twist carries the symbol side
        of leg 0 onto the symbol side of leg 1, exactly."""
        return w_map(self.leg_bilaurent(0)) == self.leg_bilaurent(1)

    def degrees(self) -> list[int]:
        keys = set(self.legs[0]) | set(self.legs[1])
        return sorted(keys)


def iota(x: NCPoly, params: ParamSet, d: int | None = None) -> CSfpElement:
    """Embed a symbolic glued-disc element into the doubled picture:

        a  -> (z (x) U*, 1 (x) U*)      b  -> (1 (x) U, y (x) U)

    and adjoints accordingly. Coefficients scale the operators numerically
    and the symbols exactly."""
    d = params.d if d is None else d
    z = disc_rep("z", params, d)
    y = disc_rep("y", params, d)
    one_op = identity(d)
    one_sym = LaurentPoly.exact({0: 1})
    u = LaurentPoly.exact({1: 1})
    ustar = LaurentPoly.exact({-1: 1})
    images = {
        "a": CSfpElement({-1: (z, u)}, {-1: (one_op, one_sym)}),
        "a*": CSfpElement({1: (z.adjoint(), ustar)}, {1: (one_op, one_sym)}),
        "b": CSfpElement({1: (one_op, one_sym)}, {1: (y, u)}),
        "b*": CSfpElement({-1: (one_op, one_sym)}, {-1: (y.adjoint(), ustar)}),
    }
    letters = x.pres.letters
    unit = CSfpElement({0: (one_op, one_sym)}, {0: (one_op, one_sym)})
    total: CSfpElement | None = None
    for word, coef in x.terms().items():
        factor = unit
        for i in word:
            factor = factor @ images[letters[i]]
        term = factor.scale(coef.evaluate(params.q, params.p, params.s), coef)
        total = term if total is None else total + term
    return total if total is not None else CSfpElement({}, {})


def extract_degree(element: CSfpElement, N: int) -> FibrePair | None:
    """The degree-N coefficient of a doubled-picture element, as a twist-N
    fibre pair; None when the degree is absent. Membership is re-validated
    at construction."""
    c0 = element.legs[0].get(N)
    c1 = element.legs[1].get(N)
    if c0 is None and c1 is None:
        return None
    d = element.dim()
    zero_op = TruncOp(np.zeros((d, d)), 0, "N")
    empty = LaurentPoly.exact({})
    op0, sym0 = c0 if c0 is not None else (zero_op, empty)
    op1, sym1 = c1 if c1 is not None else (zero_op, empty)
    return FibrePair(op0, op1, sym0, sym1, N)


def iota_kron_assignment(
    leg: int, params: ParamSet, d: int, w: int
) -> dict[str, np.ndarray]:
    """Raw-matrix form of the doubled picture on one leg, with the circle
    factor realized as the window shift: a -> z (x) U* on leg 0, etc.
    Matrices act on the tensor of the disc space (dim d) and the window
    (dim 2w+1); trust the interior kron_interior(d, w, margins) only."""
    u = pi_rep("+", LaurentPoly.numeric({1: 1}), w).mat
    ustar = u.conj().T
    eye_d = np.eye(d)
    eye_w = np.eye(2 * w + 1)
    z = disc_rep("z", params, d).mat
    y = disc_rep("y", params, d).mat
    if leg == 0:
        return {
            "a": np.kron(z, ustar),
            "a*": np.kron(z.conj().T, u),
            "b": np.kron(eye_d, u),
            "b*": np.kron(eye_d, ustar),
        }
    if leg == 1:
        return {
            "a": np.kron(eye_d, ustar),
            "a*": np.kron(eye_d, u),
            "b": np.kron(y, u),
            "b*": np.kron(y.conj().T, ustar),
        }
    raise ValueError("leg must be 0 or 1")


def kron_interior(d: int, w: int, disc_margin: int, window_margin: int) -> np.ndarray:
    """Indices of the trusted interior of the tensor space: disc index below
    d - disc_margin, window index at distance >= window_margin from both
    window edges."""
    dw = 2 * w + 1
    keep = []
    for i in range(d - disc_margin):
        for j in range(window_margin, dw - window_margin):
            keep.append(i * dw + j)
    return np.asarray(keep, dtype=int)


def evaluate_raw(x: NCPoly, assignment: Mapping[str, np.ndarray], params: ParamSet) -> np.ndarray:
    """Evaluate a symbolic element on raw matrices (no trust bookkeeping)."""
    letters = x.pres.letters
    first = next(iter(assignment.values()))
    total = np.zeros_like(first, dtype=np.complex128)
    for word, coef in x.terms().items():
        factor = np.eye(first.shape[0], dtype=np.complex128)
        for i in word:
            factor = factor @ assignment[letters[i]]
        total = total + coef.evaluate(params.q, params.p, params.s) * factor
    return total


# -- the equatorial family -------------------------------------------------------


@dataclass(frozen=True)
class PodlesPair:
    """Numeric spectral generators of the equatorial family, realized on the
    two gluing legs over the squared-base disc defect t = 1 - xx*."""

    zeta: FibrePair
    eta: FibrePair
    t: TruncOp


def podles_generators(params: ParamSet, d: int | None = None) -> PodlesPair:
    """Operator legs for the family generators:

        zeta -> (-s^2 q^2 t, q^2 t)
        eta  -> (f0(t) shift, f1(t) shift)   with subdiagonal entries
                f0 at q^{2(n+1)}: s sqrt((1 - v)(1 + s^2 v))
                f1 at q^{2(n+1)}:   sqrt((1 - v)(s^2 + v))

    Both eta legs have exact boundary symbol s U; zeta has symbol 0."""
    d = params.d if d is None else d
    qq = params.q**2
    s = params.s
    n = np.arange(d)
    t_diag = qq**n
    t_op = diag_op(t_diag)
    zeta0 = diag_op(-(s**2) * qq ** (n + 1.0))
    zeta1 = diag_op(qq ** (n + 1.0))
    v = qq ** (np.arange(d - 1) + 1.0)
    mat0 = np.zeros((d, d), dtype=np.complex128)
    mat1 = np.zeros((d, d), dtype=np.complex128)
    rows = np.arange(d - 1)
    mat0[rows + 1, rows] = s * np.sqrt((1.0 - v) * (1.0 + s**2 * v))
    mat1[rows + 1, rows] = np.sqrt((1.0 - v) * (s**2 + v))
    eta0 = TruncOp(mat0, 1, "N")
    eta1 = TruncOp(mat1, 1, "N")
    empty = LaurentPoly.exact({})
    s_u = LaurentPoly.exact({1: S_COEF})
    zeta = FibrePair(zeta0, zeta1, empty, empty, 0)
    eta = FibrePair(eta0, eta1, s_u, s_u, 0)
    return PodlesPair(zeta=zeta, eta=eta, t=t_op)


def polar_part(pair: FibrePair) -> FibrePair:
    """Isometry part of the polar decomposition, leg by leg; the symbol is
    the phase of the original symbol (implemented for the single-monomial
    symbols arising here)."""

    def leg(op: TruncOp) -> TruncOp:
        return op @ inv_sqrt_psd(op.adjoint() @ op)

    def phase(sym: LaurentPoly) -> LaurentPoly:
        if sym.is_zero():
            return sym
        if len(sym.terms) != 1:
            raise ValueError("polar phase implemented for monomial symbols only")
        (n, coef), = sym.terms.items()
        return LaurentPoly.exact({n: 1}) if coef else LaurentPoly.exact({})

    return FibrePair(
        leg(pair.t0), leg(pair.t1), phase(pair.sym0), phase(pair.sym1), pair.twist
    )


# -- numeric line-bundle idempotents ----------------------------------------------


def en_numeric(
    N: int,
    params: ParamSet,
    assignment: str = "corrected",
    d: int | None = None,
    cap: int = 4,
) -> tuple[list[list[FibrePair]], list[list[LaurentPoly]]]:
    """Numeric idempotent matrix for degree N over the glued algebra.

    Entries are built as outer products of the evaluated X and Y legs (which
    is exactly the evaluation of E's entries, reassociated), with exact
    symbols read off the normal-formed symbolic entries. Returns the matrix
    of FibrePairs and the matrix of common boundary symbols."""
    from .idempotents import build_en
    from .presentations import normal_form

    X, Y, E = build_en(N, assignment, cap)
    d = params.d if d is None else d
    n1 = X.shape[0]
    legs = (s3_leg_assignment(0, params, d), s3_leg_assignment(1, params, d))
    xv = [[evaluate(X[k, 0], legs[leg], params) for k in range(n1)] for leg in (0, 1)]
    yv = [[evaluate(Y[k, 0], legs[leg], params) for k in range(n1)] for leg in (0, 1)]
    pairs: list[list[FibrePair]] = []
    syms: list[list[LaurentPoly]] = []
    for i in range(n1):
        prow = []
        srow = []
        for j in range(n1):
            entry = normal_form(E[i, j])
            sym0 = s3_leg_symbol(entry, 0)
            sym1 = s3_leg_symbol(entry, 1)
            fp = FibrePair(
                xv[0][i] @ yv[0][j], xv[1][i] @ yv[1][j], sym0, sym1, 0
            )
            prow.append(fp)
            srow.append(sym0)
        pairs.append(prow)
        syms.append(srow)
    return pairs, syms
