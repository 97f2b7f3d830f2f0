"""Cumulant scalings, limit constants, and covariance formulas for families.

The four equivalent boundedness conditions on a family of representations
are expressed through classical cumulants of three kinds of observables:
group-algebra elements (condition 1), disjoint products of embedded
indicator sums (condition 2), natural products of the same (condition 3),
and free cumulants of the slot diagrams (condition 4).  Each condition
carries its own power-of-q normalization; the scaled values stay bounded
and, for the first two cumulant orders, converge to limits assembled from
the constant table c_{slot, index}.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from .diagrams import free_cumulants
from .indicators import IndicatorSum, free_cumulant_as_indicators
from .wreath import (
    Example1Family,
    InducedFamily,
    IrreducibleFamily,
    OuterFamily,
    RepFamily,
    RestrictedFamily,
    TensorFamily,
    enumerate_irreps,
)


def set_partitions(n: int):
    """All partitions of {0..n-1} into nonempty blocks, as tuples of tuples."""
    if n == 0:
        yield ()
        return
    for rest in set_partitions(n - 1):
        last = n - 1
        yield rest + ((last,),)
        for i, block in enumerate(rest):
            yield rest[:i] + (block + (last,),) + rest[i + 1 :]


def _mobius(blocks: int) -> int:
    return (-1) ** (blocks - 1) * math.factorial(blocks - 1)


def cumulant_from_moments(moment, n: int):
    """Classical joint cumulant of n variables from a subset-moment oracle.

    moment receives a tuple of argument indices (a block) and must return
    the expectation of the product of those variables.
    """
    total = Fraction(0)
    for pi in set_partitions(n):
        term = Fraction(_mobius(len(pi)))
        for block in pi:
            term *= moment(block)
        total += term
    return total


def _as_indicator(rows) -> IndicatorSum:
    if isinstance(rows, IndicatorSum):
        return rows
    return IndicatorSum.indicator(tuple(rows))


def natural_cumulant(family: RepFamily, q: int, args):
    """Cumulant of embedded indicator sums under the algebra product.

    args: list of (slot, rows-or-IndicatorSum).  Same-slot factors inside
    one moment block multiply through the structure constants.
    """
    items = [(slot, _as_indicator(rows)) for slot, rows in args]

    def moment(block):
        return family.moment(q, [items[i] for i in block])

    return cumulant_from_moments(moment, len(items))


def disjoint_cumulant(family: RepFamily, q: int, args):
    """Cumulant under the disjoint product: same-slot rows concatenate."""
    items = [(slot, _as_indicator(rows)) for slot, rows in args]

    def moment(block):
        merged: dict[int, IndicatorSum] = {}
        for i in block:
            slot, summ = items[i]
            merged[slot] = merged[slot].disjoint(summ) if slot in merged else summ
        return family.moment(q, sorted(merged.items()))

    return cumulant_from_moments(moment, len(items))


def canonical_measure(family: RepFamily, q: int) -> dict:
    """Probability of each partition tuple under the family's size-q measure."""
    if isinstance(family, Example1Family):
        out = {}
        for lam_tuple in enumerate_irreps(family.ct, q):
            p = family.canonical_probability(q, lam_tuple)
            if p:
                out[lam_tuple] = p
        return out
    if isinstance(family, IrreducibleFamily):
        return {family.shapes(q): Fraction(1)}
    from .bruteforce import family_character_values, measure_from_character, wreath_group

    wg = wreath_group(family.ct, q)
    return measure_from_character(wg, family_character_values(family, q))


def r_cumulant(family: RepFamily, q: int, args, route: str = "indicator"):
    """Cumulant of free cumulants of the random slot diagrams.

    args: list of (slot, n) with n >= 2 the free-cumulant index.  The
    indicator route rewrites each R_n as a sum of conjugacy indicators and
    reuses the moment oracle; the measure route enumerates the canonical
    measure and takes classical cumulants of the diagram functionals.
    Both agree wherever both run.
    """
    if route == "indicator":
        converted = [(slot, free_cumulant_as_indicators(n)) for slot, n in args]
        return natural_cumulant(family, q, converted)
    if route == "measure":
        measure = canonical_measure(family, q)
        values = []
        for slot, n in args:
            values.append(
                {t: free_cumulants(t[slot], n)[n - 1] for t in measure}
            )

        def moment(block):
            total = Fraction(0)
            for t, p in measure.items():
                prod = p
                for i in block:
                    prod *= values[i][t]
                total += prod
            return total

        return cumulant_from_moments(moment, len(args))
    raise ValueError(f"unknown route {route!r}")


def permutation_length(perm) -> int:
    """Minimal number of transpositions: size minus cycle count."""
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return len(perm) - cycles


def element_cumulant(family: RepFamily, q: int, elements):
    """Cumulant of group elements under the normalized family character.

    Enumeration-backed only; the elements should have disjoint supports so
    that products are order-independent.
    """
    from .bruteforce import family_character_values, w_mul, wreath_group

    wg = wreath_group(family.ct, q)
    values = family_character_values(family, q)
    mult = family.ct.group.mult

    def moment(block):
        prod = wg.elements[wg.identity]
        for i in block:
            prod = w_mul(mult, prod, elements[i])
        return values[wg.index[prod]]

    return cumulant_from_moments(moment, len(elements))


def _q_power(q: int, numerator: int):
    """q**(numerator/2), exact when the exponent is integral."""
    if numerator % 2 == 0:
        return Fraction(q) ** (numerator // 2)
    root = math.isqrt(q)
    if root * root == q:
        return Fraction(root) ** numerator
    return float(q) ** (numerator / 2)


def condition_exponent(condition: int, args) -> int:
    """Twice the exponent of q applied to the raw cumulant."""
    n = len(args)
    if condition == 1:
        lengths = sum(permutation_length(perm) for _, perm in args)
        return lengths + 2 * (n - 1)
    if condition in (2, 3):
        total = sum(l for _, l in args)
        return -(total - n + 2)
    if condition == 4:
        total = sum(l for _, l in args)
        return -(total - 2 * (n - 1))
    raise ValueError("condition must be 1, 2, 3, or 4")


def scaled_quantity(family: RepFamily, condition: int, q: int, args):
    """One scaled cumulant of the boundedness conditions; exact when possible.

    args per condition: 1 -> list of (colors, perm) elements at size q;
    2 and 3 -> list of (slot, row length); 4 -> list of (slot, R-index).
    """
    if condition == 1:
        raw = element_cumulant(family, q, [e for e in args])
        exponent = condition_exponent(1, args)
    elif condition == 2:
        raw = disjoint_cumulant(family, q, [(s, (l,)) for s, l in args])
        exponent = condition_exponent(2, args)
    elif condition == 3:
        raw = natural_cumulant(family, q, [(s, (l,)) for s, l in args])
        exponent = condition_exponent(3, args)
    elif condition == 4:
        raw = r_cumulant(family, q, list(args))
        exponent = condition_exponent(4, args)
    else:
        raise ValueError("condition must be 1, 2, 3, or 4")
    scale = _q_power(q, exponent)
    if isinstance(scale, float):
        return float(raw) * scale
    return raw * scale


def compositions(total: int):
    """Ordered tuples of positive integers summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def composition_double_sum(c_of, l1: int, l2: int, weight=None):
    """Sum over equal-length composition pairs of (l1 l2 / r) prod c(a_i+b_i).

    weight, if given, maps the common length r to an extra factor.
    """
    by_length: dict[int, list] = {}
    for a in compositions(l1):
        by_length.setdefault(len(a), []).append(a)
    total = Fraction(0)
    for b in compositions(l2):
        r = len(b)
        for a in by_length.get(r, ()):
            term = Fraction(l1 * l2, r)
            for x, y in zip(a, b):
                term = term * c_of(x + y)
                if not term:
                    break
            if term and weight is not None:
                term = term * weight(r)
            total += term
    return total


@dataclass
class LimitParameters:
    """Limit constants of a family: the c table and scaled covariances.

    c maps (slot, index >= 2) to the limit of E[R_index] q^{-index/2};
    cov maps symmetrized (slot1, l1, slot2, l2) to the limit of
    Cov(R_{l1+1}, R_{l2+1}) q^{-(l1+l2)/2}.  Missing keys mean zero.
    cov=None means the covariance table is not determined (the induction
    transform only propagates means).
    """

    slots: int
    c: dict = field(default_factory=dict)
    cov: dict | None = field(default_factory=dict)

    def c_value(self, slot: int, index: int):
        if index < 2:
            raise ValueError("free-cumulant limits start at index 2")
        return self.c.get((slot, index), Fraction(0))

    @staticmethod
    def _key(s1, l1, s2, l2):
        return min((s1, l1, s2, l2), (s2, l2, s1, l1))

    def covariance(self, s1: int, l1: int, s2: int, l2: int):
        """Limit of Cov(R_{l1+1}(slot s1), R_{l2+1}(slot s2)) q^{-(l1+l2)/2}."""
        if self.cov is None:
            raise ValueError("covariance table not available for this family")
        return self.cov.get(self._key(s1, l1, s2, l2), Fraction(0))

    def disjoint_covariance(self, s1: int, l1: int, s2: int, l2: int):
        """Same limit for the disjoint covariance of indicator sums."""
        value = self.covariance(s1, l1, s2, l2)
        if s1 == s2:
            value = value - composition_double_sum(
                lambda m: self.c_value(s1, m), l1, l2
            )
        return value

    def to_json(self) -> dict:
        doc = {
            "slots": self.slots,
            "c": [[s, i, str(v)] for (s, i), v in sorted(self.c.items()) if v],
        }
        if self.cov is None:
            doc["cov"] = None
        else:
            doc["cov"] = [
                [s1, l1, s2, l2, str(v)]
                for (s1, l1, s2, l2), v in sorted(self.cov.items())
                if v
            ]
        return doc


def limit_covariance_rhs(params: LimitParameters, s1, l1, s2, l2, disjoint_cov_limit):
    """Natural-covariance limit from a disjoint one plus the double sum."""
    if s1 != s2:
        return disjoint_cov_limit
    return disjoint_cov_limit + composition_double_sum(
        lambda m: params.c_value(s1, m), l1, l2
    )


def example1_limits(weights, max_l: int = 6) -> LimitParameters:
    """Limit table of the independent-box family with the given slot weights."""
    weights = [Fraction(w) for w in weights]
    c = {}
    cov = {}
    for z, w in enumerate(weights):
        if w:
            c[(z, 2)] = w
            cov[(z, 1, z, 1)] = w * (1 - w)
            for l in range(2, max_l + 1):
                cov[(z, l, z, l)] = l * w**l
        for z2 in range(z + 1, len(weights)):
            if w and weights[z2]:
                cov[(z, 1, z2, 1)] = -w * weights[z2]
    return LimitParameters(slots=len(weights), c=c, cov=cov)


def half_power(p, k: int):
    """p**(k/2) exactly when possible, else as a float."""
    p = Fraction(p)
    if p < 0:
        raise ValueError("negative base")
    if k == 0:
        return Fraction(1)
    if p == 0:
        return Fraction(0)
    if k % 2 == 0:
        return p ** (k // 2)
    rn, rd = math.isqrt(p.numerator), math.isqrt(p.denominator)
    if rn * rn == p.numerator and rd * rd == p.denominator:
        return Fraction(rn, rd) ** k
    return float(p) ** (k / 2)


def irreducible_limits(family: IrreducibleFamily, max_index: int = 7) -> LimitParameters:
    """Deterministic-shape limits: dilated base cumulants, zero covariance."""
    c = {}
    for z, (w, base) in enumerate(zip(family.weights, family.bases)):
        if not w:
            continue
        rs = free_cumulants(base, max_index)
        ratio = Fraction(w) / sum(base)
        for i in range(2, max_index + 1):
            value = rs[i - 1]
            if value:
                c[(z, i)] = half_power(ratio, i) * value
    return LimitParameters(slots=family.ct.num_irreps, c=c, cov={})


def restrict_limits(params: LimitParameters, p) -> LimitParameters:
    """Limits after restricting from size r_q with q/r_q -> p."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("restriction density must lie in [0, 1]")
    if p == 0:
        # only terms whose q powers cancel exactly survive the limit, and
        # they reassemble the independent-box table at the same weights
        weights = [params.c_value(z, 2) for z in range(params.slots)]
        return example1_limits(weights, max_l=_max_l(params))
    c = {
        (z, i): half_power(p, i - 2) * v for (z, i), v in params.c.items() if v
    }
    cov = None
    if params.cov is not None:
        cov = {}
        top = _max_l(params)
        for s1 in range(params.slots):
            for s2 in range(s1, params.slots):
                for l1 in range(1, top + 1):
                    for l2 in range(l1 if s1 == s2 else 1, top + 1):
                        value = _restricted_cov(params, p, s1, l1, s2, l2)
                        if value:
                            cov[LimitParameters._key(s1, l1, s2, l2)] = value
    return LimitParameters(slots=params.slots, c=c, cov=cov)


def _max_l(params: LimitParameters) -> int:
    top = 2
    for _, i in params.c:
        top = max(top, i - 1)
    if params.cov:
        for _, l1, _, l2 in params.cov:
            top = max(top, l1, l2)
    return top


def _restricted_cov(params: LimitParameters, p, s1, l1, s2, l2):
    base = params.covariance(s1, l1, s2, l2)
    pin = (
        l1
        * l2
        * params.c_value(s1, l1 + 1)
        * params.c_value(s2, l2 + 1)
        * (1 / p - 1)
    )
    value = base - pin
    if s1 == s2:
        value = value + composition_double_sum(
            lambda m: params.c_value(s1, m), l1, l2, weight=lambda r: p**-r - 1
        )
    return half_power(p, l1 + l2) * value


def induce_limits(params: LimitParameters, p, ct) -> LimitParameters:
    """Means after inducing from size r_q with r_q/q -> p; covariance open."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("induction density must lie in [0, 1]")
    order = len(ct.group.mult)
    c = {}
    for z, irrep in enumerate(ct.irreps):
        fresh = Fraction(irrep.dim**2, order)
        value = p * params.c_value(z, 2) + (1 - p) * fresh
        if value:
            c[(z, 2)] = value
    for (z, i), v in params.c.items():
        if i >= 3 and v:
            scaled = half_power(p, i) * v
            if scaled:
                c[(z, i)] = scaled
    return LimitParameters(slots=params.slots, c=c, cov=None)


def outer_limits(left: LimitParameters, right: LimitParameters, p1) -> LimitParameters:
    """Limits of the size-split juxtaposition with left share p1."""
    p1 = Fraction(p1)
    if not 0 <= p1 <= 1:
        raise ValueError("left share must lie in [0, 1]")
    p2 = 1 - p1
    slots = left.slots
    if right.slots != slots:
        raise ValueError("slot counts differ")
    c = {}
    for z in range(slots):
        for i in range(2, max(_max_l(left), _max_l(right)) + 2):
            value = half_power(p1, i) * left.c_value(z, i) + half_power(
                p2, i
            ) * right.c_value(z, i)
            if value:
                c[(z, i)] = value
    out = LimitParameters(slots=slots, c=c, cov=None)
    if left.cov is None or right.cov is None:
        return out
    cov = {}
    top = max(_max_l(left), _max_l(right))
    for s1 in range(slots):
        for s2 in range(s1, slots):
            for l1 in range(1, top + 1):
                for l2 in range(l1 if s1 == s2 else 1, top + 1):
                    disjoint = half_power(p1, l1 + l2) * left.disjoint_covariance(
                        s1, l1, s2, l2
                    ) + half_power(p2, l1 + l2) * right.disjoint_covariance(
                        s1, l1, s2, l2
                    )
                    value = limit_covariance_rhs(out, s1, l1, s2, l2, disjoint)
                    if value:
                        cov[LimitParameters._key(s1, l1, s2, l2)] = value
    out.cov = cov
    return out


def tensor_limits(left: Example1Family, right: Example1Family) -> LimitParameters:
    """Pointwise product of two independent-box families: new fibre weights."""
    from .cyclotomics import value_as_fraction
    from .groups import conjugate_value

    for fam in (left, right):
        if not isinstance(fam, Example1Family) or fam.multiplicities is None:
            raise ValueError("tensor limits need explicit fibre representations")
    ct = left.ct
    order = len(ct.group.mult)

    def fibre_char(fam, g):
        return sum(
            m * ct.value(z, g) for z, m in enumerate(fam.multiplicities)
        )

    dims = [
        sum(m * r.dim for m, r in zip(fam.multiplicities, ct.irreps))
        for fam in (left, right)
    ]
    weights = []
    for z in range(ct.num_irreps):
        dot = 0
        for g in range(order):
            dot = dot + fibre_char(left, g) * fibre_char(right, g) * conjugate_value(
                ct.value(z, g)
            )
        mult = value_as_fraction(dot) / order
        weights.append(mult * ct.irreps[z].dim / (dims[0] * dims[1]))
    return example1_limits(weights)


def family_limits(family: RepFamily, max_index: int = 6) -> LimitParameters:
    """Limit table assembled along the family's constructor tree."""
    if isinstance(family, Example1Family):
        return example1_limits(family.weights, max_l=max_index)
    if isinstance(family, IrreducibleFamily):
        return irreducible_limits(family, max_index=max_index + 1)
    if isinstance(family, RestrictedFamily):
        return restrict_limits(
            family_limits(family.parent, max_index), 1 / family.ratio
        )
    if isinstance(family, InducedFamily):
        return induce_limits(
            family_limits(family.parent, max_index), family.ratio, family.ct
        )
    if isinstance(family, OuterFamily):
        return outer_limits(
            family_limits(family.left, max_index),
            family_limits(family.right, max_index),
            family.ratio,
        )
    if isinstance(family, TensorFamily):
        return tensor_limits(family.left, family.right)
    raise ValueError(f"no limit table for family kind {family.kind!r}")


@dataclass
class ConvergenceReport:
    """Grid evaluation of one scaled quantity with an optional limit check."""

    description: str
    rows: list  # (q, raw, scaled, limit, abs_err)
    verdict: bool | None

    def to_json(self) -> dict:
        def show(x):
            if x is None:
                return None
            if isinstance(x, Fraction):
                return str(x)
            return float(x)

        return {
            "description": self.description,
            "rows": [
                {
                    "q": q,
                    "raw": show(raw),
                    "scaled": show(scaled),
                    "limit": show(limit),
                    "abs_err": show(err),
                }
                for q, raw, scaled, limit, err in self.rows
            ],
            "verdict": self.verdict,
        }

    def to_csv(self) -> str:
        lines = ["# schema_version=1", "q,raw,scaled,limit,abs_err,scaled_float"]
        for q, raw, scaled, limit, err in self.rows:
            cells = [str(q)]
            for x in (raw, scaled, limit, err):
                if x is None:
                    cells.append("")
                elif isinstance(x, Fraction):
                    cells.append(str(x))
                else:
                    cells.append(repr(float(x)))
            cells.append(repr(float(scaled)))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def _grid_point(payload):
    family, condition, q, args = payload
    if condition == 1:
        raw = element_cumulant(family, q, list(args))
    elif condition == 2:
        raw = disjoint_cumulant(family, q, [(s, (l,)) for s, l in args])
    elif condition == 3:
        raw = natural_cumulant(family, q, [(s, (l,)) for s, l in args])
    elif condition == 4:
        raw = r_cumulant(family, q, list(args))
    else:
        raise ValueError("condition must be 1, 2, 3, or 4")
    return raw


def convergence_report(
    family: RepFamily,
    condition: int,
    args,
    q_grid,
    limit=None,
    description: str = "",
    tolerance: Fraction = Fraction(15, 100),
    workers: int = 1,
) -> ConvergenceReport:
    """Evaluate one scaled cumulant over a q grid and judge the trend.

    The verdict (only when a limit is supplied) passes when the absolute
    error strictly decreases along the grid, allowing consecutive exact
    zeros, and the relative error at the largest q is within tolerance.
    """
    q_grid = sorted(q_grid)
    payloads = [(family, condition, q, tuple(args)) for q in q_grid]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            raws = list(pool.map(_grid_point, payloads))
    else:
        raws = [_grid_point(p) for p in payloads]
    rows = []
    for q, raw in zip(q_grid, raws):
        scale = _q_power(q, condition_exponent(condition, args))
        scaled = float(raw) * scale if isinstance(scale, float) else raw * scale
        err = None
        if limit is not None:
            err = abs(scaled - limit)
        rows.append((q, raw, scaled, limit, err))
    verdict = None
    if limit is not None:
        errors = [row[4] for row in rows]
        decreasing = all(
            b < a or (a == 0 and b == 0) for a, b in zip(errors, errors[1:])
        )
        last = errors[-1]
        if limit == 0:
            close = last <= tolerance
        else:
            close = last <= tolerance * abs(limit)
        verdict = bool(decreasing and close)
    return ConvergenceReport(description=description, rows=rows, verdict=verdict)


def report_json(reports) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
