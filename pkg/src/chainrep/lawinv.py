"""Distribution-determined submodular functions and their spectral anatomy.

A weighted space carries a reference measure nu on the ground set and a
nonnegative density, defining a second measure mu with mu({i}) =
density[i] * nu({i}). The distribution function of the density,

    F(y) = nu({ i : density[i] <= y }),

is a right-continuous step function, and

    v(A) = integral over z >= 0 of min(nu(full) - F(z), nu(A))

is a monotone submodular set function that depends on A only through
nu(A), matches mu on every density level set, and has the equivalent
quantile form  v(A) = integral of the right-continuous inverse of F over
[nu(complement of A), nu(full)).

Every integral in this module is a finite sum over step segments,
evaluated in exact rational arithmetic. The module also provides:

* the Hardy-Littlewood style product formula  v(f) = integral of
  quantile(density) * quantile(f) over [0, nu(full)) for f >= 0;
* comonotone attainment: when f and the density are comonotone (no
  crossing pair) the Choquet integral of f equals the plain integral of
  f against mu, which is also the supremum of the integrals against all
  measures sharing mu's distribution;
* the spectral probability measure on (0, 1] whose atoms decompose v(f)
  into normalized tail averages (expected-shortfall style components).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .chains import DiscreteMeasure, subset_sums
from .choquet import SimpleFunction, layer_decompose
from .errors import (
    AlphaOutOfRange,
    BetaOutOfRange,
    ChainConditionError,
    InternalConsistencyError,
    NegativeValues,
    NotComonotone,
    TiedDensities,
    ZeroTotalMass,
)
from .setfn import GroundSet, ScalarLike, SetFunction, as_scalar

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class WeightedSpace:
    """Reference measure plus density: the data behind a law-invariant v."""

    ground: GroundSet
    nu: DiscreteMeasure
    density: tuple[Fraction, ...]

    def __post_init__(self):
        dens = tuple(as_scalar(x) for x in self.density)
        object.__setattr__(self, "density", dens)
        if self.nu.ground != self.ground:
            raise ValueError("reference measure lives on a different ground set")
        if len(dens) != self.ground.size:
            raise ValueError("one density value per ground element required")
        if any(d < 0 for d in dens):
            raise ValueError("density values must be nonnegative")
        if self.nu.total <= 0:
            raise ValueError("reference measure must have positive total mass")

    @classmethod
    def counting(
        cls, ground: GroundSet, density: Sequence[ScalarLike]
    ) -> "WeightedSpace":
        weights = (Fraction(1),) * ground.size
        return cls(ground, DiscreteMeasure(ground, weights), tuple(density))

    def mu(self) -> DiscreteMeasure:
        return DiscreteMeasure(
            self.ground,
            tuple(d * w for d, w in zip(self.density, self.nu.weights)),
        )

    @property
    def mu_total(self) -> Fraction:
        return self.mu().total

    def density_function(self) -> SimpleFunction:
        return SimpleFunction(self.ground, self.density)


@dataclass(frozen=True)
class StepDistribution:
    """Right-continuous non-decreasing step function on [0, infinity).

    ``F(z)`` equals the level at the largest breakpoint <= z and 0 to the
    left of the first breakpoint; the final level is the total mass.
    """

    breakpoints: tuple[Fraction, ...]
    levels: tuple[Fraction, ...]

    def __post_init__(self):
        bps = tuple(as_scalar(x) for x in self.breakpoints)
        lvs = tuple(as_scalar(x) for x in self.levels)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "levels", lvs)
        if len(bps) != len(lvs) or not bps:
            raise ValueError("need matching nonempty breakpoints and levels")
        if any(b < 0 for b in bps):
            raise ValueError("breakpoints must be nonnegative")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(a > b for a, b in zip(lvs, lvs[1:])):
            raise ValueError("levels must be non-decreasing")
        if lvs[-1] <= 0:
            raise ValueError("total mass must be positive")

    @property
    def total(self) -> Fraction:
        return self.levels[-1]

    def value_at(self, z: ScalarLike) -> Fraction:
        z = as_scalar(z)
        out = ZERO
        for bp, lv in zip(self.breakpoints, self.levels):
            if bp <= z:
                out = lv
            else:
                break
        return out

    def survival_segments(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Constant pieces (start, end, total - F) with positive survival.

        The survival is zero from the last breakpoint on, so the finite
        list captures the whole mass of any survival-type integral.
        """
        segs = []
        if self.breakpoints[0] > 0:
            segs.append((ZERO, self.breakpoints[0], self.total))
        for j in range(len(self.breakpoints) - 1):
            surv = self.total - self.levels[j]
            if surv > 0:
                segs.append((self.breakpoints[j], self.breakpoints[j + 1], surv))
        return segs

    def quantile_segments(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Constant pieces (lo, hi, z) of the right-continuous inverse on [0, total)."""
        segs = []
        prev = ZERO
        for bp, lv in zip(self.breakpoints, self.levels):
            if lv > prev:
                segs.append((prev, lv, bp))
                prev = lv
        return segs

    def quantile(self, beta: ScalarLike) -> Fraction:
        """Right-continuous inverse: the smallest z with F(z) > beta."""
        beta = as_scalar(beta)
        if beta < 0 or beta >= self.total:
            raise BetaOutOfRange(
                f"beta must lie in [0, {self.total}), got {beta}"
            )
        for bp, lv in zip(self.breakpoints, self.levels):
            if lv > beta:
                return bp
        raise AssertionError("unreachable: final level equals total")


def quantile(dist: StepDistribution, beta: ScalarLike) -> Fraction:
    """Module-level alias for :meth:`StepDistribution.quantile`."""
    return dist.quantile(beta)


def distribution_of_function(
    nu: DiscreteMeasure, values: Sequence[ScalarLike]
) -> StepDistribution:
    """Step distribution F(y) = nu({ value <= y }) of a nonnegative vector.

    Zero-mass jumps (elements of zero nu-weight) are dropped, so the
    representation is canonical with at most m breakpoints.
    """
    vals = [as_scalar(x) for x in values]
    if any(x < 0 for x in vals):
        raise NegativeValues("distribution requires nonnegative values")
    masses: dict[Fraction, Fraction] = {}
    for x, w in zip(vals, nu.weights):
        masses[x] = masses.get(x, ZERO) + w
    bps = []
    lvs = []
    acc = ZERO
    for x in sorted(masses):
        if masses[x] > 0:
            acc += masses[x]
            bps.append(x)
            lvs.append(acc)
    return StepDistribution(tuple(bps), tuple(lvs))


def distribution_of_density(w: WeightedSpace) -> StepDistribution:
    return distribution_of_function(w.nu, w.density)


def distribution_integral(dist: StepDistribution, upto: ScalarLike) -> Fraction:
    """Exact integral of F over [0, upto]."""
    upto = as_scalar(upto)
    if upto < 0:
        raise ValueError("upper limit must be nonnegative")
    total = ZERO
    for j, (bp, lv) in enumerate(zip(dist.breakpoints, dist.levels)):
        if bp >= upto:
            break
        nxt = (
            dist.breakpoints[j + 1]
            if j + 1 < len(dist.breakpoints)
            else upto
        )
        total += lv * (min(nxt, upto) - bp)
    return total


def quantile_integral(
    dist: StepDistribution, lo: ScalarLike, hi: ScalarLike
) -> Fraction:
    """Exact integral of the right-continuous inverse over [lo, hi)."""
    lo, hi = as_scalar(lo), as_scalar(hi)
    if not 0 <= lo <= hi <= dist.total:
        raise BetaOutOfRange(
            f"integration range must sit inside [0, {dist.total}]"
        )
    total = ZERO
    for a, b, z in dist.quantile_segments():
        left, right = max(a, lo), min(b, hi)
        if left < right:
            total += z * (right - left)
    return total


def _survival_min_integral(dist: StepDistribution, cap: Fraction) -> Fraction:
    """Integral over z >= 0 of min(total - F(z), cap)."""
    total = ZERO
    for start, end, surv in dist.survival_segments():
        total += min(surv, cap) * (end - start)
    return total


def v_mu(w: WeightedSpace, a_mask: int) -> Fraction:
    """Value at A of the law-invariant function built from the density."""
    return _survival_min_integral(distribution_of_density(w), w.nu.mass(a_mask))


def v_mu_set_function(w: WeightedSpace) -> SetFunction:
    """Materialize the law-invariant function on the whole subset lattice."""
    dist = distribution_of_density(w)
    nu_sums = w.nu.subset_sums()
    return SetFunction(
        w.ground,
        tuple(_survival_min_integral(dist, nu_sums[s]) for s in w.ground.subsets()),
    )


def v_mu_via_quantile(w: WeightedSpace, a_mask: int) -> Fraction:
    """Quantile form: integral of the inverse distribution over the top nu(A) mass."""
    dist = distribution_of_density(w)
    nu_a = w.nu.mass(a_mask)
    return quantile_integral(dist, dist.total - nu_a, dist.total)


def v_mu_integral(w: WeightedSpace, f: SimpleFunction) -> Fraction:
    """Choquet integral of f against the law-invariant function, by layers."""
    if f.ground != w.ground:
        raise ValueError("integrand lives on a different ground set")
    dist = distribution_of_density(w)
    layers = layer_decompose(f)
    total = ZERO
    for a, mask in zip(layers.coefficients, layers.sets):
        total += a * _survival_min_integral(dist, w.nu.mass(mask))
    return total


def choquet_product_formula(w: WeightedSpace, f: SimpleFunction) -> Fraction:
    """Quantile product form of the integral for nonnegative f.

    Integrates quantile(density) * quantile(f) over [0, nu(full)); equals
    the layer-cake integral of f against the law-invariant function.
    """
    if f.ground != w.ground:
        raise ValueError("integrand lives on a different ground set")
    if not f.is_nonnegative():
        raise NegativeValues("product formula requires f >= 0")
    fd = distribution_of_density(w)
    ff = distribution_of_function(w.nu, f.values)
    segs_d = fd.quantile_segments()
    segs_f = ff.quantile_segments()
    cuts = sorted({a for a, _, _ in segs_d} | {a for a, _, _ in segs_f}
                  | {fd.total})
    total = ZERO
    for left, right in zip(cuts, cuts[1:]):
        qd = next(z for a, b, z in segs_d if a <= left < b)
        qf = next(z for a, b, z in segs_f if a <= left < b)
        total += qd * qf * (right - left)
    return total


def comonotone_check(f: SimpleFunction, g: SimpleFunction) -> bool:
    """True iff no pair i, j has f(i) < f(j) while g(i) > g(j).

    Equivalent to the sublevel sets of f and g nesting into one chain.
    """
    if f.ground != g.ground:
        raise ValueError("ground sets differ")
    m = f.ground.size
    for i in range(m):
        for j in range(m):
            if f.values[i] < f.values[j] and g.values[i] > g.values[j]:
                return False
    return True


def equal_distribution_densities(w: WeightedSpace) -> Iterator[tuple[Fraction, ...]]:
    """All density vectors whose level sets carry the same nu-masses.

    These are exactly the densities of the measures absolutely continuous
    in nu that share the distribution of w's density. Elements of zero
    nu-weight are left untouched: their value never affects any mass or
    integral.
    """
    weights = w.nu.weights
    positive = [i for i in range(w.ground.size) if weights[i] > 0]
    need: dict[Fraction, Fraction] = {}
    for i in positive:
        d = w.density[i]
        need[d] = need.get(d, ZERO) + weights[i]
    values = sorted(need)
    current = list(w.density)

    def assign(k: int) -> Iterator[tuple[Fraction, ...]]:
        if k == len(positive):
            yield tuple(current)
            return
        i = positive[k]
        wi = weights[i]
        for val in values:
            if need[val] >= wi:
                need[val] -= wi
                current[i] = val
                yield from assign(k + 1)
                need[val] += wi

    yield from assign(0)


def rearrangement_sup(
    w: WeightedSpace, f: SimpleFunction
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Supremum of the integral of f over the equal-distribution class.

    Finite, hence attained; returns the value and a best density vector.
    """
    if f.ground != w.ground:
        raise ValueError("integrand lives on a different ground set")
    best = None
    best_density = None
    weights = w.nu.weights
    for density in equal_distribution_densities(w):
        val = sum(
            (fv * d * wt for fv, d, wt in zip(f.values, density, weights)),
            ZERO,
        )
        if best is None or val > best:
            best = val
            best_density = density
    return best, best_density


def _check_chain_hypothesis(w: WeightedSpace, strict: bool) -> None:
    if len(set(w.density)) != w.ground.size:
        raise TiedDensities("density values must be pairwise distinct")
    if strict:
        if len(set(w.nu.weights)) != 1:
            raise ChainConditionError(
                "strict mode requires a uniform reference measure; "
                "use strict=False for the explicit image check"
            )
        return
    dist = distribution_of_density(w)
    image_f = set(dist.levels)
    if dist.breakpoints[0] > 0:
        image_f.add(ZERO)
    image_nu = set(subset_sums(w.nu.weights))
    if not image_nu <= image_f:
        missing = sorted(image_nu - image_f)[0]
        raise ChainConditionError(
            f"distribution image misses the subset mass {missing}; "
            "the attainment hypothesis fails"
        )


def comonotone_attainment(
    w: WeightedSpace, f: SimpleFunction, strict: bool = True
) -> tuple[Fraction, Fraction, Fraction]:
    """The three coinciding values for f comonotone with the density.

    Returns (Choquet integral of f, integral of f against mu, supremum
    over the equal-distribution class). Strict mode insists on a uniform
    reference measure with pairwise distinct densities; the relaxed mode
    checks the distribution-image hypothesis explicitly and refuses when
    it fails. The three values are asserted equal.
    """
    if f.ground != w.ground:
        raise ValueError("integrand lives on a different ground set")
    if not f.is_nonnegative():
        raise NegativeValues("attainment requires f >= 0")
    _check_chain_hypothesis(w, strict)
    if not comonotone_check(f, w.density_function()):
        raise NotComonotone("f has a crossing pair against the density")
    choq = v_mu_integral(w, f)
    paired = w.mu().integral(f.values)
    sup, _ = rearrangement_sup(w, f)
    if not choq == paired == sup:
        raise InternalConsistencyError(
            f"attainment failed: choquet={choq}, paired={paired}, sup={sup}"
        )
    return choq, paired, sup


@dataclass(frozen=True)
class DominationReport:
    """How the Choquet value sits above the equal-distribution class.

    The chain-side supremum (the Choquet value itself, by the chain
    representation of this submodular function) always dominates the
    class supremum, which dominates the integral against the original
    pairing; the gaps quantify the two open ends.
    """

    choquet_value: Fraction
    rearrangement_supremum: Fraction
    best_density: tuple[Fraction, ...]
    paired_integral: Fraction

    @property
    def gap_to_supremum(self) -> Fraction:
        return self.choquet_value - self.rearrangement_supremum

    @property
    def gap_to_paired(self) -> Fraction:
        return self.choquet_value - self.paired_integral


def domination_report(w: WeightedSpace, f: SimpleFunction) -> DominationReport:
    """Compare the Choquet value with the equal-distribution suprema, f >= 0."""
    if not f.is_nonnegative():
        raise NegativeValues("domination report requires f >= 0")
    choq = v_mu_integral(w, f)
    sup, best = rearrangement_sup(w, f)
    paired = w.mu().integral(f.values)
    if choq < sup or sup < paired:
        raise InternalConsistencyError(
            f"domination violated: choquet={choq}, sup={sup}, paired={paired}"
        )
    return DominationReport(choq, sup, best, paired)


@dataclass(frozen=True)
class SpectralMeasure:
    """Discrete probability measure on (0, 1]; atoms sorted by level, descending."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        atoms = tuple(
            (as_scalar(a), as_scalar(m)) for a, m in self.atoms
        )
        atoms = tuple(sorted(atoms, key=lambda t: t[0], reverse=True))
        object.__setattr__(self, "atoms", atoms)
        if any(not 0 < a <= 1 for a, _ in atoms):
            raise ValueError("atom levels must lie in (0, 1]")
        if any(m <= 0 for _, m in atoms):
            raise ValueError("atom masses must be positive")
        if len({a for a, _ in atoms}) != len(atoms):
            raise ValueError("atom levels must be distinct")
        if sum((m for _, m in atoms), ZERO) != 1:
            raise ValueError("atom masses must sum to one")

    def tail_harmonic(self, gamma: ScalarLike) -> Fraction:
        """Sum of mass/level over atoms with level >= 1 - gamma."""
        gamma = as_scalar(gamma)
        cut = ONE - gamma
        return sum((m / a for a, m in self.atoms if a >= cut), ZERO)


def kusuoka_measure(w: WeightedSpace) -> SpectralMeasure:
    """Spectral measure of the law-invariant function.

    The cumulative mass on (0, gamma] is the tail integral of the
    density's survival function, started where the survival first drops
    to gamma * nu(full) and normalized by mu(full). The result is a
    probability measure whose atoms sit at the survival values scaled by
    nu(full); its tail harmonic sums reproduce the density quantiles:

        tail_harmonic(gamma) = nu(full)/mu(full) * quantile(nu(full)*gamma)

    for gamma in [0, 1).
    """
    mu_total = w.mu_total
    if mu_total == 0:
        raise ZeroTotalMass("spectral measure undefined: mu(full) = 0")
    dist = distribution_of_density(w)
    segs = dist.survival_segments()
    nu_total = w.nu.total
    # Tail integrals of the survival function from each segment start.
    tails = [ZERO] * (len(segs) + 1)
    for j in range(len(segs) - 1, -1, -1):
        start, end, surv = segs[j]
        tails[j] = tails[j + 1] + surv * (end - start)
    # Survival values decrease along segments, so scanning them backwards
    # yields the jump levels gamma in increasing order.
    atoms = []
    prev_mass = ZERO
    for j in range(len(segs) - 1, -1, -1):
        gamma = segs[j][2] / nu_total
        cumulative = tails[j] / mu_total
        jump = cumulative - prev_mass
        if jump > 0:
            atoms.append((gamma, jump))
        prev_mass = cumulative
    return SpectralMeasure(tuple(atoms))


def cvar_component(
    w: WeightedSpace, f: SimpleFunction, alpha: ScalarLike
) -> Fraction:
    """Normalized tail average of f at level alpha, scaled by mu(full).

    At alpha = 1 this is mu(full)/nu(full) times the plain nu-integral of
    f; as alpha shrinks it weights the largest values of f ever more.
    """
    alpha = as_scalar(alpha)
    if not 0 < alpha <= 1:
        raise AlphaOutOfRange(f"alpha must lie in (0, 1], got {alpha}")
    if f.ground != w.ground:
        raise ValueError("integrand lives on a different ground set")
    if not f.is_nonnegative():
        raise NegativeValues("tail component requires f >= 0")
    cap = alpha * w.nu.total
    dist = distribution_of_function(w.nu, f.values)
    return w.mu_total / cap * _survival_min_integral(dist, cap)


@dataclass(frozen=True)
class SpectralDecompositionReport:
    """Both sides of the spectral identity, with per-atom components."""

    direct: Fraction
    by_components: Fraction
    components: tuple[tuple[Fraction, Fraction, Fraction], ...]  # (alpha, mass, value)

    @property
    def agrees(self) -> bool:
        return self.direct == self.by_components


def spectral_decomposition_check(
    w: WeightedSpace, f: SimpleFunction
) -> SpectralDecompositionReport:
    """Check v(f) = sum of mass * tail component over the spectral atoms."""
    if not f.is_nonnegative():
        raise NegativeValues("spectral decomposition requires f >= 0")
    direct = v_mu_integral(w, f)
    spectral = kusuoka_measure(w)
    components = []
    acc = ZERO
    for alpha, mass in spectral.atoms:
        val = cvar_component(w, f, alpha)
        components.append((alpha, mass, val))
        acc += mass * val
    report = SpectralDecompositionReport(direct, acc, tuple(components))
    if not report.agrees:
        raise InternalConsistencyError(
            f"spectral decomposition mismatch: direct={direct}, "
            f"components={acc}"
        )
    return report
