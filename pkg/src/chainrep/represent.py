"""Core membership and the four-way characterization of submodularity.

For a monotone set function v with v(empty) = 0, the following are
equivalent, and this module decides each one independently:

(a) v is submodular;
(b) the telescoped measure of every maximal chain is dominated by v
    everywhere (lies in the lower core at the full set);
(c) v(A) equals the maximum over all chains of the chain measure of A;
(d) for every nested pair B <= A, telescoping along a chain that has both
    A and B as prefixes yields, after restriction to A, a measure inside
    the lower core at A (which then attains the local supremum at B).

The supermodular mirror replaces maxima by minima and the lower core by
the upper core.

The chain maximum in (c) is computed by dynamic programming over lattice
paths from the empty set to the full set: a chain is exactly such a path,
and only steps that add an element of the target subset contribute their
increment. The DP is exhaustive-equivalent to sweeping all m! chains and
is cross-checked against the literal sweep in the test suite. Arithmetic
is exact throughout: values are scaled to a common denominator and the DP
runs on integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .chains import (
    Chain,
    DiscreteMeasure,
    all_chains,
    extremal_measure,
    insert_nested_pair,
    require_sweepable,
    subset_sums,
)
from .errors import NotNested
from .setfn import SetFunction, is_monotone, is_submodular, is_supermodular


def scaled_int_values(v: SetFunction) -> tuple[list[int], int]:
    """Common-denominator integer image of the values; exact."""
    den = 1
    for x in v.values:
        den = lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in v.values], den


def _chain_opt_tails(
    values: Sequence[int], m: int, a_mask: int, maximize: bool
) -> list:
    """tails[S] = best total increment of A-elements over paths S -> full."""
    full = (1 << m) - 1
    tails = [0] * (full + 1)
    rng = range(m)
    for s in range(full - 1, -1, -1):
        vs = values[s]
        best = None
        for i in rng:
            b = 1 << i
            if s & b:
                continue
            t = s | b
            g = tails[t]
            if a_mask & b:
                g += values[t] - vs
            if best is None or (g > best if maximize else g < best):
                best = g
        tails[s] = best
    return tails


def _lex_first_optimal_chain(
    v: SetFunction, values: Sequence[int], a_mask: int, tails: Sequence[int]
) -> Chain:
    m = v.ground.size
    order = []
    s = 0
    for _ in range(m):
        target = tails[s]
        vs = values[s]
        for i in range(m):
            b = 1 << i
            if s & b:
                continue
            g = tails[s | b]
            if a_mask & b:
                g += values[s | b] - vs
            if g == target:
                order.append(i)
                s |= b
                break
    return Chain(v.ground, tuple(order))


def _opt_over_chains(
    v: SetFunction, a_mask: int, maximize: bool
) -> tuple[Fraction, Chain]:
    require_sweepable(v.ground)
    values, den = scaled_int_values(v)
    tails = _chain_opt_tails(values, v.ground.size, a_mask, maximize)
    witness = _lex_first_optimal_chain(v, values, a_mask, tails)
    return Fraction(tails[0], den), witness


def sup_over_chains(v: SetFunction, a_mask: int) -> tuple[Fraction, Chain]:
    """Maximum over all chains of the telescoped measure of the subset.

    Requires monotone v. Returns the value together with the
    lexicographically first attaining chain; the maximum dominates v at
    the subset, with equality everywhere iff v is submodular.
    """
    return _opt_over_chains(v, a_mask, maximize=True)


def inf_over_chains(v: SetFunction, a_mask: int) -> tuple[Fraction, Chain]:
    """Minimum counterpart of :func:`sup_over_chains` (supermodular side)."""
    return _opt_over_chains(v, a_mask, maximize=False)


def in_lower_core(
    v: SetFunction, mu: DiscreteMeasure
) -> tuple[bool, int | None]:
    """Membership of mu in the lower core of v at the full set.

    True iff mu matches v on the full set and mu(B) <= v(B) for every B.
    The witness is the first violating mask in bitmask order (the full
    mask doubles as the witness when only the total-mass equality fails).
    """
    return _core_membership(v, mu, lower=True)


def in_upper_core(
    v: SetFunction, mu: DiscreteMeasure
) -> tuple[bool, int | None]:
    """Mirror of :func:`in_lower_core` with domination reversed."""
    return _core_membership(v, mu, lower=False)


def _core_membership(
    v: SetFunction, mu: DiscreteMeasure, lower: bool
) -> tuple[bool, int | None]:
    if v.ground != mu.ground:
        raise ValueError("set function and measure live on different ground sets")
    full = v.ground.full_mask
    sums = mu.subset_sums()
    for s in v.ground.subsets():
        bad = sums[s] > v.values[s] if lower else sums[s] < v.values[s]
        if bad:
            return False, s
    if sums[full] != v.values[full]:
        return False, full
    return True, None


def local_core_sup(v: SetFunction, a_mask: int, b_mask: int) -> Fraction:
    """Constructive local-core supremum of mu(B) over measures capped by v on A.

    Telescopes v along a chain carrying both sets of the nested pair as
    prefixes; the resulting measure gives B exactly v(B), which is the
    supremum whenever v is submodular (for general v the constructed
    measure may fall outside the core; see :func:`local_core_attainment`).
    """
    return local_core_attainment(v, a_mask, b_mask).value


@dataclass(frozen=True)
class LocalCoreReport:
    """Outcome of the constructive nested-pair check at (A, B)."""

    a_mask: int
    b_mask: int
    value: Fraction
    measure: DiscreteMeasure  # telescoped measure restricted to A
    in_core: bool
    violated: int | None  # first C <= A with measure(C) on the wrong side


def local_core_attainment(
    v: SetFunction, a_mask: int, b_mask: int, lower: bool = True
) -> LocalCoreReport:
    if b_mask & ~a_mask:
        raise NotNested("B must be contained in A")
    chain = insert_nested_pair(Chain.identity(v.ground), a_mask, b_mask)
    mu = extremal_measure(v, chain)
    restricted = DiscreteMeasure(
        v.ground,
        tuple(
            w if a_mask >> i & 1 else Fraction(0)
            for i, w in enumerate(mu.weights)
        ),
    )
    value = restricted.mass(b_mask)
    in_core, violated = _restricted_core_check(v, restricted, a_mask, lower)
    return LocalCoreReport(a_mask, b_mask, value, restricted, in_core, violated)


def _restricted_core_check(
    v: SetFunction, mu: DiscreteMeasure, a_mask: int, lower: bool
) -> tuple[bool, int | None]:
    # Walk the submasks of A in increasing bitmask order.
    sums = mu.subset_sums()
    c = 0
    while True:
        bad = sums[c] > v.values[c] if lower else sums[c] < v.values[c]
        if bad:
            return False, c
        if c == a_mask:
            return True, None
        c = (c - a_mask) & a_mask  # next submask


@dataclass(frozen=True)
class EquivalenceReport:
    """The four booleans of the chain-representation equivalence.

    All four agree for every monotone input; each carries the first
    witness found when false.
    """

    modular_side: str  # "submodular" or "supermodular"
    a_holds: bool
    a_witness: object | None
    b_holds: bool
    b_witness: tuple[Chain, int] | None
    c_holds: bool
    c_witness: tuple[int, Chain] | None
    d_holds: bool
    d_witness: tuple[int, int, int] | None

    @property
    def booleans(self) -> tuple[bool, bool, bool, bool]:
        return (self.a_holds, self.b_holds, self.c_holds, self.d_holds)

    @property
    def consistent(self) -> bool:
        return len(set(self.booleans)) == 1

    @property
    def all_hold(self) -> bool:
        return all(self.booleans)


def _extremal_measures_in_core(
    v: SetFunction, lower: bool
) -> tuple[bool, tuple[Chain, int] | None]:
    """(b): every chain's telescoped measure is dominated by / dominates v."""
    values, _den = scaled_int_values(v)
    m = v.ground.size
    size = 1 << m
    for chain in all_chains(v.ground):
        weights = [0] * m
        prev = 0
        mask = 0
        for i in chain.order:
            mask |= 1 << i
            cur = values[mask]
            weights[i] = cur - prev
            prev = cur
        sums = subset_sums(weights)
        for s in range(size):
            bad = sums[s] > values[s] if lower else sums[s] < values[s]
            if bad:
                return False, (chain, s)
    return True, None


def _sup_matches_everywhere(
    v: SetFunction, maximize: bool
) -> tuple[bool, tuple[int, Chain] | None]:
    """(c): the chain optimum agrees with v on every subset."""
    values, den = scaled_int_values(v)
    m = v.ground.size
    for a in v.ground.subsets():
        tails = _chain_opt_tails(values, m, a, maximize)
        if tails[0] != values[a]:
            witness = _lex_first_optimal_chain(v, values, a, tails)
            return False, (a, witness)
    return True, None


def _local_candidates_in_core(
    v: SetFunction, lower: bool
) -> tuple[bool, tuple[int, int, int] | None]:
    """(d): the constructive nested-pair measures all lie in the local core."""
    for a in v.ground.subsets():
        b = 0
        while True:
            report = local_core_attainment(v, a, b, lower=lower)
            if not report.in_core:
                return False, (a, b, report.violated)
            if b == a:
                break
            b = (b - a) & a
    return True, None


def _verify(v: SetFunction, lower: bool) -> EquivalenceReport:
    ok_mono, w = is_monotone(v)
    if not ok_mono:
        raise ValueError(
            "equivalence verification requires a monotone set function; "
            f"v decreases from mask {w.small} to {w.large}"
        )
    require_sweepable(v.ground)
    a_holds, a_wit = is_submodular(v) if lower else is_supermodular(v)
    b_holds, b_wit = _extremal_measures_in_core(v, lower)
    c_holds, c_wit = _sup_matches_everywhere(v, maximize=lower)
    d_holds, d_wit = _local_candidates_in_core(v, lower)
    return EquivalenceReport(
        "submodular" if lower else "supermodular",
        a_holds, a_wit, b_holds, b_wit, c_holds, c_wit, d_holds, d_wit,
    )


def verify_submodular_equivalence(v: SetFunction) -> EquivalenceReport:
    """Evaluate all four submodular-side statements independently."""
    return _verify(v, lower=True)


def verify_supermodular_equivalence(v: SetFunction) -> EquivalenceReport:
    """Evaluate the four dual statements: infima and the upper core."""
    return _verify(v, lower=False)
