"""Index pairings between the two Fredholm pictures and glued idempotents.

Two one-summable modules are provided:

* kind "pr": the difference of the two projection legs of a fibre pair
  (right leg minus left leg). Against the range projections chi(N) this
  pairs to exactly +N.
* kind "pi": the difference of the two shift pictures of the common
  boundary symbol on the integer-lattice window. Against any of the shipped
  idempotents it pairs to +1 (it sees only the rank over the boundary).

Degree-N line-bundle idempotents pair with the "pr" module to
ORIENTATION_SIGN * N: the twist normalization lands the degree-N module on
chi(-N) (see glue.ORIENTATION), so the sign is a recorded orientation
convention, not a free choice per run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, SymbolMismatch
from .glue import FibrePair, chi, en_numeric, fp_matmul
from .opnum import ParamSet, TraceResult, pi_rep, trace_finite_rank

ORIENTATION_SIGN = -1


@dataclass(frozen=True)
class FredholmModule:
    """kind "pr" pairs the two operator legs; kind "pi" pairs the two
    integer-lattice shift pictures of the boundary symbol (needs the window
    radius w, and params when symbols carry exact coefficients)."""

    kind: str
    params: ParamSet | None = None
    w: int | None = None

    def __post_init__(self):
        if self.kind not in ("pr", "pi"):
            raise ValueError(f"kind must be 'pr' or 'pi', got {self.kind!r}")
        if self.kind == "pi" and self.w is None:
            raise ValueError("the 'pi' module needs a window radius w")

    def difference(self, pair: FibrePair):
        """(rho_+ - rho_-) applied to one fibre pair."""
        if self.kind == "pr":
            return pair.t1 - pair.t0
        if pair.twist != 0 or pair.sym0 != pair.sym1:
            raise SymbolMismatch(
                "the 'pi' module needs twist 0 with equal leg symbols"
            )
        plus = pi_rep("+", pair.sym0, self.w, self.params)
        minus = pi_rep("-", pair.sym0, self.w, self.params)
        return plus - minus


@dataclass(frozen=True)
class PairingResult:
    value: float
    rounded: int
    exact: bool
    residual: float
    meta: dict = field(compare=False, default_factory=dict)


def _as_matrix(P) -> list[list[FibrePair]]:
    if isinstance(P, FibrePair):
        return [[P]]
    rows = [list(row) for row in P]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DimensionMismatch("idempotent matrix must be square")
        for entry in row:
            if not isinstance(entry, FibrePair):
                raise TypeError("matrix entries must be FibrePair")
    return rows


def _idem_defect(entries: list[list[FibrePair]], guard: int) -> float:
    square = fp_matmul(entries, entries)
    worst = 0.0
    for row_sq, row in zip(square, entries):
        for a, b in zip(row_sq, row):
            diff = a - b
            for leg in (diff.t0, diff.t1):
                block = leg.trusted_block(guard)
                if block.size:
                    worst = max(worst, float(np.max(np.abs(block))))
            if not (diff.sym0.is_zero() and diff.sym1.is_zero()):
                raise SymbolMismatch(
                    "symbol matrix is not exactly idempotent; refusing to pair"
                )
    return worst


def pair(
    module: FredholmModule,
    P,
    idem_tol: float = 1e-8,
    tail_tol: float = 1e-9,
    guard: int = 2,
) -> PairingResult:
    """Index pairing of a module with an idempotent (FibrePair or square
    matrix of twist-0 FibrePairs).

    Preconditions enforced: every entry has twist 0, the exact symbol matrix
    is exactly idempotent, and the operator legs are idempotent on their
    trusted blocks within idem_tol. The value is the sum of the diagonal
    traces of (rho_+ - rho_-); `exact` means every trace had a machine-zero
    tail, in which case the residual cannot move with the window size."""
    entries = _as_matrix(P)
    for row in entries:
        for entry in row:
            if entry.twist != 0:
                raise SymbolMismatch("pairing needs twist-0 idempotents")
    defect = _idem_defect(entries, guard)
    if defect > idem_tol:
        raise ValueError(
            f"not an idempotent within tolerance: trusted-block defect "
            f"{defect:.3e} exceeds {idem_tol:.3e}"
        )
    traces: list[TraceResult] = []
    for i in range(len(entries)):
        diff = module.difference(entries[i][i])
        traces.append(trace_finite_rank(diff, tail_tol, guard))
    value = float(sum(t.value for t in traces))
    rounded = int(round(value))
    residual = abs(value - rounded)
    exact = all(t.exact for t in traces)
    meta = {
        "kind": module.kind,
        "size": len(entries),
        "idem_defect": defect,
        "tail_max": max(t.tail_max for t in traces),
        "orientation_sign": ORIENTATION_SIGN,
    }
    return PairingResult(
        value=value, rounded=rounded, exact=exact, residual=residual, meta=meta
    )


# -- expected values and interpretation ------------------------------------------


def expected_pairing(module_kind: str, representative: str, N: int) -> int:
    """The integer each pairing must produce: the "pi" module counts rank
    over the boundary (always 1 for the shipped representatives); the "pr"
    module reads the winding, +N on chi(N) and ORIENTATION_SIGN * N on the
    degree-N idempotent."""
    if module_kind == "pi":
        return 1
    if representative == "chi":
        return int(N)
    if representative == "en":
        return ORIENTATION_SIGN * int(N)
    raise ValueError(f"unknown representative {representative!r}")


def winding_interpretation(representative: str, module_kind: str, N: int) -> str:
    if module_kind == "pi":
        return "rank = 1"
    if representative == "chi":
        return f"winding = {int(N)}"
    return f"winding = {ORIENTATION_SIGN * int(N)} (orientation sign {ORIENTATION_SIGN})"


@dataclass(frozen=True)
class IndexRow:
    N: int
    representative: str
    module: str
    result: PairingResult
    expected: int
    interpretation: str
    status: str


CHI_RESIDUAL_TOL = 1e-12
EN_RESIDUAL_TOL = 1e-3
EN_CAP = 3


def index_table(
    params: ParamSet,
    nmax: int = 5,
    d: int | None = None,
    w: int | None = None,
    include_en: bool = True,
) -> list[IndexRow]:
    """Pair chi(N) for |N| <= nmax (and the degree-N idempotents for
    |N| <= min(nmax, 3)) against both modules and classify each row."""
    d = params.d if d is None else d
    w = params.w if w is None else w
    pr = FredholmModule("pr")
    pi = FredholmModule("pi", params=params, w=w)
    rows: list[IndexRow] = []

    def add(N: int, rep: str, module: FredholmModule, P, tol: float) -> None:
        result = pair(module, P)
        expected = expected_pairing(module.kind, rep, N)
        ok = result.rounded == expected and result.residual <= tol
        rows.append(
            IndexRow(
                N=N,
                representative=rep,
                module=module.kind,
                result=result,
                expected=expected,
                interpretation=winding_interpretation(rep, module.kind, N),
                status="pass" if ok else "fail",
            )
        )

    for N in range(-nmax, nmax + 1):
        cN = chi(N, d)
        add(N, "chi", pr, cN, CHI_RESIDUAL_TOL)
        add(N, "chi", pi, cN, CHI_RESIDUAL_TOL)
    if include_en:
        for N in range(-min(nmax, EN_CAP), min(nmax, EN_CAP) + 1):
            pairs, _ = en_numeric(N, params, d=d)
            add(N, "en", pr, pairs, EN_RESIDUAL_TOL)
            add(N, "en", pi, pairs, EN_RESIDUAL_TOL)
    return rows
