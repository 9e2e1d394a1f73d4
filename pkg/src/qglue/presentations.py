"""Finite *-algebra presentations and the rewriting engine.

A presentation fixes an alphabet, a grading, a star structure and a list of
reduction rules. Rules come in two modes:

* ``subword``: the redex is replaced wherever it occurs as a contiguous
  subword.
* ``pbw``: the rule fires on a sorted, subword-irreducible word whose letter
  counts dominate the redex counts. The replacement is computed from the
  left cofactor so the leading term cancels; this is one-generator left
  Groebner reduction and is valid when the rule element quasi-commutes with
  every generator (true for the shipped presets).

Words are compared by the measure (sum of per-letter order weights, length,
letter sequence). Every rule must strictly decrease it, which makes the
deterministic reducer terminate; the check can be disabled to build
deliberately looping systems for guard tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .coefficients import CoefPoly, ONE
from .errors import GradingError, PresentationError, RewriteLimitExceeded
from .ncpoly import NCPoly, Word

DEFAULT_MAX_STEPS = 1_000_000


@dataclass(frozen=True)
class Rule:
    redex: Word
    rhs: tuple[tuple[Word, CoefPoly], ...]
    pbw: bool = False
    redex_counts: tuple[int, ...] = field(default=(), compare=False)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, max_steps: int):
        self.left = int(max_steps)

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise RewriteLimitExceeded(
                "rewrite step budget exhausted; the rule system may not terminate"
            )


def _coerce_coef(value) -> CoefPoly:
    if isinstance(value, CoefPoly):
        return value
    if isinstance(value, Rational):
        return CoefPoly.scalar(value)
    raise TypeError(f"bad rule coefficient of type {type(value).__name__}")


class Presentation:
    """Alphabet, grading, star structure and rules of one algebra."""

    def __init__(
        self,
        name: str,
        letters: Sequence[str],
        weights: Sequence[int],
        star: Mapping[str, object],
        rules: Iterable[tuple],
        order_weights: Sequence[int] | None = None,
        check_order: bool = True,
    ):
        self.name = str(name)
        self.letters = tuple(letters)
        if len(set(self.letters)) != len(self.letters):
            raise PresentationError(f"{name}: duplicate letter names")
        for letter in self.letters:
            if not letter or any(ch.isspace() for ch in letter):
                raise PresentationError(f"{name}: bad letter name {letter!r}")
        self._index = {letter: i for i, letter in enumerate(self.letters)}

        if len(weights) != len(self.letters):
            raise PresentationError(f"{name}: need one grading weight per letter")
        self.weights = tuple(int(w) for w in weights)

        if order_weights is None:
            order_weights = (0,) * len(self.letters)
        if len(order_weights) != len(self.letters):
            raise PresentationError(f"{name}: need one order weight per letter")
        self.order_weights = tuple(int(w) for w in order_weights)

        self.star_table = self._build_star_table(star)
        self.rules = tuple(self._build_rule(spec) for spec in rules)
        self._subword_rules = tuple(r for r in self.rules if not r.pbw)
        self._pbw_rules = tuple(r for r in self.rules if r.pbw)

        if check_order:
            for rule in self.rules:
                m = self.measure(rule.redex)
                for word, _ in rule.rhs:
                    if self.measure(word) >= m:
                        raise PresentationError(
                            f"{name}: rule {self._word_str(rule.redex)} -> ... does "
                            f"not decrease the term order at {self._word_str(word)}"
                        )

        self._nf_cache: dict[Word, dict[Word, CoefPoly]] = {}
        self._nf_cache_subword: dict[Word, dict[Word, CoefPoly]] = {}

    # -- construction helpers ------------------------------------------------

    def _build_star_table(self, star: Mapping[str, object]) -> dict[int, tuple[int, CoefPoly]]:
        table: dict[int, tuple[int, CoefPoly]] = {}
        for src, spec in star.items():
            if isinstance(spec, str):
                partner, scale = spec, ONE
            else:
                partner, scale = spec
                scale = _coerce_coef(scale)
            i, j = self._index[src], self._index[partner]
            table[i] = (j, scale)
            if j not in table or j == i:
                # star is an involution, so the partner's image is forced
                table.setdefault(j, (i, scale.inverse_monomial()))
        missing = [self.letters[i] for i in range(len(self.letters)) if i not in table]
        if missing:
            raise PresentationError(f"{self.name}: star table misses {missing}")
        for i, (j, scale) in table.items():
            k, back = table[j]
            if k != i or back * scale != ONE:
                raise PresentationError(
                    f"{self.name}: star table is not involutive at {self.letters[i]}"
                )
        return table

    def _build_rule(self, spec: tuple) -> Rule:
        if len(spec) == 2:
            redex_spec, rhs_spec = spec
            pbw = False
        else:
            redex_spec, rhs_spec, mode = spec
            if mode not in ("subword", "pbw"):
                raise PresentationError(f"{self.name}: unknown rule mode {mode!r}")
            pbw = mode == "pbw"
        redex = self.word(redex_spec)
        if not redex:
            raise PresentationError(f"{self.name}: empty redex")
        rhs = tuple(
            (self.word(w), _coerce_coef(c)) for w, c in rhs_spec.items() if _coerce_coef(c)
        )
        counts = self._counts(redex) if pbw else ()
        if pbw and tuple(sorted(redex)) != redex:
            raise PresentationError(f"{self.name}: pbw redex must be sorted")
        return Rule(redex=redex, rhs=rhs, pbw=pbw, redex_counts=counts)

    # -- word helpers ---------------------------------------------------------

    def word(self, text) -> Word:
        """Parse 'z* z' (whitespace-separated letter names) into a word."""
        if isinstance(text, tuple):
            return text
        tokens = text.split()
        if tokens == ["1"]:
            return ()
        try:
            return tuple(self._index[t] for t in tokens)
        except KeyError as exc:
            raise PresentationError(f"{self.name}: unknown letter {exc.args[0]!r}") from None

    def gen(self, name: str) -> NCPoly:
        return NCPoly.letter(self, self._index[name])

    def one(self) -> NCPoly:
        return NCPoly.scalar(self, 1)

    def element(self, terms: Mapping[str, object]) -> NCPoly:
        return NCPoly(self, {self.word(w): _coerce_coef(c) for w, c in terms.items()})

    def measure(self, word: Word):
        return (sum(self.order_weights[i] for i in word), len(word), word)

    def word_degree(self, word: Word) -> int:
        return sum(self.weights[i] for i in word)

    def _counts(self, word: Word) -> tuple[int, ...]:
        counts = [0] * len(self.letters)
        for i in word:
            counts[i] += 1
        return tuple(counts)

    def sorted_word_from_counts(self, counts: Sequence[int]) -> Word:
        return tuple(
            itertools.chain.from_iterable((i,) * c for i, c in enumerate(counts))
        )

    def _word_str(self, word: Word) -> str:
        return " ".join(self.letters[i] for i in word) if word else "1"

    # -- validation -------------------------------------------------------------

    def validate(self) -> None:
        """Check rule homogeneity for the grading and adjoint closure of the
        relation ideal; raises on failure."""
        for rule in self.rules:
            deg = self.word_degree(rule.redex)
            for word, _ in rule.rhs:
                if self.word_degree(word) != deg:
                    raise GradingError(
                        f"{self.name}: rule {self._word_str(rule.redex)} -> ... is "
                        f"inhomogeneous at {self._word_str(word)}"
                    )
        for rule in self.rules:
            element = NCPoly(self, {rule.redex: ONE}) - NCPoly(self, dict(rule.rhs))
            if not normal_form(element.star()).is_zero():
                raise PresentationError(
                    f"{self.name}: adjoint of rule {self._word_str(rule.redex)} -> ... "
                    "does not reduce to zero"
                )

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, letters={self.letters})"


# -- reduction engine ------------------------------------------------------


def _is_sorted(word: Word) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


def _dominates(counts: Sequence[int], base: Sequence[int]) -> bool:
    return all(c >= b for c, b in zip(counts, base))


def _merge(acc: dict[Word, CoefPoly], word: Word, coef: CoefPoly) -> None:
    cur = acc.get(word)
    cur = coef if cur is None else cur + coef
    if cur:
        acc[word] = cur
    else:
        acc.pop(word, None)


def _subword_options(pres: Presentation, word: Word):
    """All (rule, position) pairs where a subword rule applies."""
    options = []
    for pos in range(len(word)):
        for rule in pres._subword_rules:
            width = len(rule.redex)
            if word[pos : pos + width] == rule.redex:
                options.append((rule, pos))
    return options

def _pbw_options(pres: Presentation, word: Word):
    if not pres._pbw_rules or not _is_sorted(word):
        return []
    counts = pres._counts(word)
    return [rule for rule in pres._pbw_rules if _dominates(counts, rule.redex_counts)]


def _apply_subword(word: Word, rule: Rule, pos: int):
    head, tail = word[:pos], word[pos + len(rule.redex) :]
    return [(head + mid + tail, coef) for mid, coef in rule.rhs]


def _apply_pbw(pres: Presentation, word: Word, rule: Rule, budget: _Budget):
    """Reduce a sorted word by a pbw rule via its left cofactor.

    With C the sorted word of the count difference, C * (redex - rhs) is zero
    in the algebra and its subword normal form contains the target word with
    an invertible monomial coefficient lam; solving for the target gives the
    replacement -lam^{-1} * (rest).
    """
    counts = pres._counts(word)
    cof = tuple(c - b for c, b in zip(counts, rule.redex_counts))
    cword = pres.sorted_word_from_counts(cof)
    terms: dict[Word, CoefPoly] = {cword + rule.redex: ONE}
    for mid, coef in rule.rhs:
        _merge(terms, cword + mid, -coef)
    full = _reduce_terms(pres, terms, budget, use_pbw=False)
    lam = full.pop(word, None)
    if lam is None or not lam.is_monomial():
        raise PresentationError(
            f"{pres.name}: pbw rule failed to produce an invertible leading "
            f"coefficient on {pres._word_str(word)}"
        )
    lam_inv = lam.inverse_monomial()
    return [(w2, -(lam_inv * c2)) for w2, c2 in full.items()]


def _expand_once(pres: Presentation, word: Word, budget: _Budget, use_pbw: bool):
    """One deterministic reduction step (leftmost position, first rule), or
    None if the word is irreducible."""
    for pos in range(len(word)):
        for rule in pres._subword_rules:
            width = len(rule.redex)
            if word[pos : pos + width] == rule.redex:
                budget.tick()
                return _apply_subword(word, rule, pos)
    if use_pbw:
        for rule in _pbw_options(pres, word):
            budget.tick()
            return _apply_pbw(pres, word, rule, budget)
    return None


def _word_nf(pres: Presentation, start: Word, budget: _Budget, use_pbw: bool):
    cache = pres._nf_cache if use_pbw else pres._nf_cache_subword
    hit = cache.get(start)
    if hit is not None:
        return hit
    expansions: dict[Word, list] = {}
    stack: list[tuple[Word, int]] = [(start, 0)]
    while stack:
        word, phase = stack.pop()
        if phase == 0:
            if word in cache or word in expansions:
                continue
            expansion = _expand_once(pres, word, budget, use_pbw)
            if expansion is None:
                cache[word] = {word: ONE}
                continue
            expansions[word] = expansion
            stack.append((word, 1))
            for child, _ in expansion:
                if child not in cache and child not in expansions:
                    stack.append((child, 0))
        else:
            acc: dict[Word, CoefPoly] = {}
            for child, coef in expansions.pop(word):
                child_nf = cache.get(child)
                if child_nf is None:
                    raise RewriteLimitExceeded(
                        f"{pres.name}: cyclic reduction detected at "
                        f"{pres._word_str(child)}"
                    )
                for w2, c2 in child_nf.items():
                    _merge(acc, w2, coef * c2)
            cache[word] = acc
    return cache[start]


def _reduce_terms(pres, terms: Mapping[Word, CoefPoly], budget: _Budget, use_pbw: bool):
    acc: dict[Word, CoefPoly] = {}
    for word, coef in terms.items():
        for w2, c2 in _word_nf(pres, word, budget, use_pbw).items():
            _merge(acc, w2, coef * c2)
    return acc


def _random_reduce(pres, terms: Mapping[Word, CoefPoly], rng, budget: _Budget):
    """Fully randomized reduction: at each step pick uniformly among every
    applicable (word, rule, position) option. Bypasses all caches; used to
    probe confluence against the deterministic reducer."""
    acc = dict(terms)
    while True:
        options = []
        for word in sorted(acc):
            subs = _subword_options(pres, word)
            for rule, pos in subs:
                options.append((word, rule, pos))
            if not subs:
                for rule in _pbw_options(pres, word):
                    options.append((word, rule, None))
        if not options:
            return acc
        word, rule, pos = options[rng.randrange(len(options))]
        budget.tick()
        if pos is None:
            expansion = _apply_pbw(pres, word, rule, budget)
        else:
            expansion = _apply_subword(word, rule, pos)
        coef = acc.pop(word)
        for w2, c2 in expansion:
            _merge(acc, w2, coef * c2)


def normal_form(
    x: NCPoly,
    *,
    max_steps: int = DEFAULT_MAX_STEPS,
    rng=None,
) -> NCPoly:
    """Reduce an element to its normal form.

    Deterministic by default (memoized, leftmost-position first-rule);
    passing an rng switches to the uncached randomized strategy, which
    must agree with the deterministic one exactly when the rule system is
    confluent. Raises RewriteLimitExceeded after max_steps rewrites.
    """
    pres = x.pres
    budget = _Budget(max_steps)
    if rng is None:
        reduced = _reduce_terms(pres, x.terms(), budget, use_pbw=True)
    else:
        reduced = _random_reduce(pres, x.terms(), rng, budget)
    return NCPoly(pres, reduced)


# -- grading helpers ----------------------------------------------------------


def degree(x: NCPoly) -> int:
    """Grading degree of a homogeneous element (0 for the zero element)."""
    degrees = {x.pres.word_degree(w) for w in x.terms()}
    if not degrees:
        return 0
    if len(degrees) > 1:
        raise GradingError(f"element is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop()


def homogeneous_component(x: NCPoly, n: int) -> NCPoly:
    return NCPoly(
        x.pres, {w: c for w, c in x.terms().items() if x.pres.word_degree(w) == n}
    )


def verify_identity(lhs: NCPoly, rhs=None, *, max_steps: int = DEFAULT_MAX_STEPS):
    """Check lhs = rhs in the algebra; returns (holds, witness) where the
    witness is the normal form of the difference."""
    diff = lhs if rhs is None else lhs - rhs
    witness = normal_form(diff, max_steps=max_steps)
    return witness.is_zero(), witness
