"""Batch command-line frontend emitting machine-readable reports.

Subcommands: diagram, group, family, moments, cumulants, limits, sample,
verify, report.  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 infeasible request.  Every command is deterministic given its
flags (seeds included); CSV cells carry exact rationals as "p/q" with a
float companion where plotting needs one.
"""

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .asymptotics import (
    canonical_measure,
    convergence_report,
    disjoint_cumulant,
    family_limits,
    natural_cumulant,
    r_cumulant,
)
from .bruteforce import WreathGroup, tensor_algebra_image
from .cyclotomics import conjugate_value, value_as_fraction
from .diagrams import free_cumulants, minima_maxima, profile_moment, transition_measure
from .groups import builtin_group, character_table_from_json, validate_character_table
from .indicators import compose, expand_indicator, product_coefficients
from .partitions import is_partition, partitions_of
from .sampling import (
    batch_csv,
    fluctuation_statistics,
    normality_check,
    predicted_r_covariance,
    sample_batch,
    spec_name,
)
from .wreath import (
    Example1Family,
    enumerate_irreps,
    factorized_character,
    family_from_json,
    wreath_dimension,
)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class InfeasibleError(Exception):
    pass


# ------------------------------------------------------------ configuration


@dataclass
class RunConfig:
    """Validated inputs of one CLI invocation."""

    command: str
    group: str | None = None
    family: object = None
    q: int | None = None
    q_grid: list | None = None
    n_samples: int | None = None
    seed: int = 0
    out: str | None = None
    format: str = "json"
    workers: int = 1
    bound: int | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, ns):
        known = {
            "command",
            "group",
            "family",
            "q",
            "q_grid",
            "n_samples",
            "seed",
            "out",
            "format",
            "workers",
            "bound",
        }
        fields = {k: v for k, v in vars(ns).items() if k in known}
        extra = {
            k: v
            for k, v in vars(ns).items()
            if k not in known and k != "config" and v is not None
        }
        return cls(extra=extra, **fields)

    def validate(self):
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.workers is None or int(self.workers) < 1:
            raise UsageError("workers must be at least 1")
        if self.q is not None and int(self.q) < 0:
            raise UsageError("q must be nonnegative")
        if self.n_samples is not None and int(self.n_samples) < 0:
            raise UsageError("n-samples must be nonnegative")
        if self.bound is not None and int(self.bound) < 1:
            raise UsageError("bound must be positive")


CONFIG_KEYS = {
    "command",
    "group",
    "family",
    "partition",
    "q",
    "q_grid",
    "n_samples",
    "seed",
    "out",
    "format",
    "workers",
    "bound",
    "scope",
    "kind",
    "condition",
    "rows",
    "stats",
    "limit",
    "tolerance",
}


def _apply_config(ns, argv):
    """Fill namespace fields from --config JSON; explicit flags win."""
    if not getattr(ns, "config", None):
        return
    try:
        doc = json.loads(Path(ns.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}")
    if not isinstance(doc, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if "command" in doc and doc["command"] != ns.command:
        raise UsageError(
            f"config is for command {doc['command']!r}, invoked {ns.command!r}"
        )
    explicit = {
        token.split("=", 1)[0].lstrip("-").replace("-", "_")
        for token in argv
        if token.startswith("--")
    }
    for key, value in doc.items():
        if key == "command" or key in explicit:
            continue
        if hasattr(ns, key):
            setattr(ns, key, value)


# ----------------------------------------------------------------- parsing


def _parse_partition(text):
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"malformed partition literal {text!r}")
    if not is_partition(parts):
        raise UsageError(f"not a partition (weakly decreasing, positive): {text!r}")
    return parts


def _parse_grid(value):
    if value is None:
        return None
    if isinstance(value, list):
        grid = [int(x) for x in value]
    else:
        try:
            grid = [int(x) for x in str(value).split(",") if x.strip()]
        except ValueError:
            raise UsageError(f"malformed q grid {value!r}")
    if not grid or any(q < 1 for q in grid):
        raise UsageError("q grid needs positive integers")
    return sorted(grid)


def _parse_rows(value):
    """Factor list: 'slot:r1,r2;slot:r' -> [(slot, (r1, r2)), (slot, (r,))]."""
    if value is None:
        raise UsageError("missing factor rows (--rows)")
    if isinstance(value, list):
        return [(int(s), tuple(int(r) for r in rows)) for s, rows in value]
    out = []
    for chunk in str(value).split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            slot_text, rows_text = chunk.split(":")
            slot = int(slot_text)
            rows = tuple(int(r) for r in rows_text.split(","))
        except ValueError:
            raise UsageError(f"malformed factor {chunk!r}; expected slot:r1,r2")
        if slot < 0 or any(r < 1 for r in rows):
            raise UsageError(f"factor {chunk!r} needs slot >= 0 and rows >= 1")
        out.append((slot, rows))
    if not out:
        raise UsageError("empty factor list")
    return out


def _parse_stats(value):
    """Statistic list: 'R:0:3;character:0:2;p:1:2' -> spec triples."""
    if isinstance(value, list):
        out = [(str(k), int(s), int(i)) for k, s, i in value]
    else:
        out = []
        for chunk in str(value).split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                kind, slot, index = chunk.split(":")
                out.append((kind, int(slot), int(index)))
            except ValueError:
                raise UsageError(f"malformed statistic {chunk!r}; expected kind:slot:i")
    if not out:
        raise UsageError("empty statistic list")
    for kind, slot, index in out:
        if kind not in ("R", "character", "p"):
            raise UsageError(f"unknown statistic kind {kind!r}")
        if kind in ("R", "p") and index < 2:
            raise UsageError(f"{kind} statistics start at index 2")
        if kind == "character" and index < 1:
            raise UsageError("character statistics need a cycle length >= 1")
        if slot < 0:
            raise UsageError("statistic slot must be nonnegative")
    return out


def _parse_limit(value):
    if value is None or value == "auto":
        return "auto"
    if value == "none":
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed limit {value!r}; use p/q, a float, or 'none'")


def _load_group(spec):
    if spec is None:
        raise UsageError("missing group (--group)")
    try:
        return builtin_group(spec)
    except ValueError:
        pass
    try:
        return character_table_from_json(json.loads(Path(spec).read_text()))
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load group {spec!r}: {exc}")


def _load_family(value):
    if value is None:
        raise UsageError("missing family descriptor (--family)")
    if isinstance(value, dict):
        doc = value
    else:
        text = str(value).strip()
        if text.startswith("{"):
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"malformed family JSON: {exc}")
        else:
            try:
                doc = json.loads(Path(text).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot load family {text!r}: {exc}")
    try:
        return family_from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad family descriptor: {exc}")


# ---------------------------------------------------------------- rendering


def _num(x):
    """Exact-plus-float rendering of one number."""
    if isinstance(x, float):
        return {"exact": None, "float": x}
    frac = Fraction(x)
    return {"exact": str(frac), "float": float(frac)}


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _grid_csv(header, rows):
    lines = [f"# schema_version={SCHEMA_VERSION}", header]
    for row in rows:
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _value_cells(value):
    if isinstance(value, float):
        return ["", repr(value)]
    frac = Fraction(value)
    return [str(frac), repr(float(frac))]


# ----------------------------------------------------------------- commands


def cmd_diagram(ns):
    lam = _parse_partition(ns.partition)
    order = 6
    tm = transition_measure(lam)
    minima, maxima = minima_maxima(lam)
    cums = free_cumulants(lam, order)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "partition": list(lam),
        "profile": {"minima": list(minima), "maxima": list(maxima)},
        "transition_measure": {
            "atoms": list(tm.atoms),
            "weights": [_num(w) for w in tm.weights],
        },
        "moments": [_num(tm.moment(n)) for n in range(1, order + 1)],
        "free_cumulants": [_num(c) for c in cums],
        "p_tilde": {str(n): _num(profile_moment(lam, n)) for n in range(2, order + 1)},
    }
    if ns.format == "csv":
        rows = []
        for atom, w in zip(tm.atoms, tm.weights):
            rows.append(["atom", str(atom)] + _value_cells(w))
        for n, c in enumerate(cums, start=1):
            rows.append(["free_cumulant", str(n)] + _value_cells(c))
        for n in range(2, order + 1):
            rows.append(["p_tilde", str(n)] + _value_cells(profile_moment(lam, n)))
        _emit(_grid_csv("quantity,index,exact,float", rows), ns.out)
    else:
        _emit(json.dumps(doc, indent=2), ns.out)
    return 0


def cmd_group(ns):
    ct = _load_group(ns.group)
    problems = validate_character_table(ct)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "order": ct.group.order,
        "num_classes": len(ct.group.conjugacy_classes),
        "class_sizes": [len(c) for c in ct.group.conjugacy_classes],
        "dimensions": list(ct.dims()),
        "problems": problems,
        "valid": not problems,
    }
    _emit(json.dumps(doc, indent=2), ns.out)
    return 1 if problems else 0


def cmd_family(ns):
    fam = _load_family(ns.family)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": fam.kind,
        "descriptor": fam.to_json(),
        "num_slots": ct_slots(fam),
    }
    try:
        doc["limits"] = family_limits(fam).to_json()
    except ValueError:
        doc["limits"] = None
    if ns.q is not None:
        q = int(ns.q)
        if q > 8 or (
            fam.kind not in ("example1", "irreducible")
            and fam.ct.group.order**q > 5000
        ):
            raise InfeasibleError(f"measure enumeration infeasible at q={q}")
        try:
            measure = canonical_measure(fam, q)
        except ValueError as exc:
            raise InfeasibleError(str(exc))
        doc["measure"] = {
            "q": q,
            "atoms": [
                {"shapes": [list(l) for l in shapes], "probability": _num(p)}
                for shapes, p in sorted(measure.items())
            ],
        }
    _emit(json.dumps(doc, indent=2), ns.out)
    return 0


def ct_slots(fam):
    return len(fam.ct.irreps)


def _grid_values(ns, evaluate):
    grid = _parse_grid(ns.q_grid) if ns.q_grid else None
    if grid is None:
        if ns.q is None:
            raise UsageError("need --q or --q-grid")
        grid = [int(ns.q)]
    rows = []
    for q in grid:
        try:
            rows.append((q, evaluate(q)))
        except (ValueError, ZeroDivisionError) as exc:
            raise InfeasibleError(f"q={q}: {exc}")
    return rows


def cmd_moments(ns):
    fam = _load_family(ns.family)
    factors = _parse_rows(ns.rows)
    rows = _grid_values(ns, lambda q: fam.moment(q, factors))
    if ns.format == "csv":
        csv_rows = [[str(q)] + _value_cells(v) for q, v in rows]
        _emit(_grid_csv("q,exact,float", csv_rows), ns.out)
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "factors": [[s, list(r)] for s, r in factors],
            "rows": [{"q": q, "moment": _num(v)} for q, v in rows],
        }
        _emit(json.dumps(doc, indent=2), ns.out)
    return 0


def cmd_cumulants(ns):
    fam = _load_family(ns.family)
    kind = ns.kind
    if kind == "free":
        args = [(s, rows[0]) for s, rows in _parse_rows(ns.rows)]
        evaluate = lambda q: r_cumulant(fam, q, args)
    elif kind == "disjoint":
        args = _parse_rows(ns.rows)
        evaluate = lambda q: disjoint_cumulant(fam, q, args)
    elif kind == "natural":
        args = _parse_rows(ns.rows)
        evaluate = lambda q: natural_cumulant(fam, q, args)
    else:
        raise UsageError(f"unknown cumulant kind {kind!r}")
    rows = _grid_values(ns, evaluate)
    if ns.format == "csv":
        csv_rows = [[str(q)] + _value_cells(v) for q, v in rows]
        _emit(_grid_csv("q,exact,float", csv_rows), ns.out)
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": kind,
            "rows": [{"q": q, "cumulant": _num(v)} for q, v in rows],
        }
        _emit(json.dumps(doc, indent=2), ns.out)
    return 0


def _auto_limit(fam, condition, args):
    """Predicted limit of the scaled quantity: mean or covariance entry."""
    if not args:
        return None
    # the limit table only answers up to its build depth; size it to the
    # requested orders or high-order rows would silently predict zero
    need = max(l for _, l in args) + 1
    try:
        params = family_limits(fam, max_index=max(6, need))
    except ValueError:
        return None
    if len(args) == 1:
        slot, l = args[0]
        index = l if condition == 4 else l + 1
        return params.c_value(slot, index)
    if len(args) == 2:
        (s1, l1), (s2, l2) = args
        if condition == 4:
            l1, l2 = l1 - 1, l2 - 1
        try:
            if condition == 2:
                return params.disjoint_covariance(s1, l1, s2, l2)
            return params.covariance(s1, l1, s2, l2)
        except ValueError:
            return None
    return None


def cmd_limits(ns):
    fam = _load_family(ns.family)
    condition = int(ns.condition)
    if condition == 1:
        raise UsageError(
            "condition 1 takes explicit group elements; use the library API"
        )
    if condition not in (2, 3, 4):
        raise UsageError("condition must be 2, 3, or 4")
    factor_rows = _parse_rows(ns.rows)
    if any(len(rows) != 1 for _, rows in factor_rows):
        raise UsageError("limits command wants single-row factors like 0:2")
    args = [(s, rows[0]) for s, rows in factor_rows]
    if condition == 4 and any(l < 2 for _, l in args):
        raise UsageError("condition 4 indices start at 2")
    grid = _parse_grid(ns.q_grid)
    if grid is None:
        raise UsageError("need --q-grid")
    limit = _parse_limit(ns.limit)
    if limit == "auto":
        limit = _auto_limit(fam, condition, args)
    tolerance = Fraction(ns.tolerance) if ns.tolerance else Fraction(15, 100)
    try:
        report = convergence_report(
            fam,
            condition,
            args,
            grid,
            limit=limit,
            description=f"condition {condition} at {args}",
            tolerance=tolerance,
            workers=ns.workers,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise InfeasibleError(str(exc))
    if ns.format == "csv":
        _emit(report.to_csv(), ns.out)
    else:
        doc = report.to_json()
        doc["schema_version"] = SCHEMA_VERSION
        _emit(json.dumps(doc, indent=2), ns.out)
    return 0


def cmd_sample(ns):
    fam = _load_family(ns.family)
    if not isinstance(fam, Example1Family):
        raise InfeasibleError(f"family kind {fam.kind!r} has no direct sampler")
    if ns.q is None:
        raise UsageError("need --q")
    q = int(ns.q)
    n = int(ns.n_samples if ns.n_samples is not None else 1000)
    seed = int(ns.seed)
    if ns.stats:
        specs = _parse_stats(ns.stats)
    else:
        specs = [("R", slot, 3) for slot in range(ct_slots(fam))]
    if n == 0:
        csv_text = "# schema_version=1\nsample,statistic,raw,centered_scaled\n"
        summary = {
            "schema_version": SCHEMA_VERSION,
            "q": q,
            "root_seed": seed,
            "n_samples": 0,
            "insufficient_data": True,
        }
    else:
        batch = sample_batch(fam, q, n, root_seed=seed, workers=ns.workers)
        csv_text = batch_csv(batch, specs)
        predicted = None
        if all(spec[0] == "R" for spec in specs):
            depth = max((spec[2] - 1 for spec in specs), default=1)
            try:
                predicted = predicted_r_covariance(
                    family_limits(fam, max_index=max(6, depth)), specs
                )
            except ValueError:
                predicted = None
        stats = fluctuation_statistics(batch, specs)
        summary = normality_check(
            stats, [spec_name(s) for s in specs], predicted_cov=predicted
        )
        summary["schema_version"] = SCHEMA_VERSION
        summary["q"] = q
        summary["root_seed"] = seed
        summary["insufficient_data"] = n < 1000
    summary_text = json.dumps(summary, indent=2)
    if ns.out:
        _emit(csv_text, ns.out)
        _emit(summary_text, str(ns.out) + ".summary.json")
    else:
        commented = "\n".join("# " + line for line in summary_text.splitlines())
        _emit(csv_text + commented + "\n", None)
    return 0


# ------------------------------------------------------------------- verify


def _check_character_tables(group_specs, failures):
    cases = 0
    for spec in group_specs:
        ct = _load_group(spec)
        cases += 1
        problems = validate_character_table(ct)
        if problems:
            failures.append({"check": "character-table", "group": spec, "problems": problems})
    return cases


def _check_wreath_orthogonality(ct, q, failures):
    wg = WreathGroup(ct, q)
    tuples = enumerate_irreps(ct, q)
    sizes = wg.class_sizes()
    chars = {t: wg.irreducible_character(t) for t in tuples}
    cases = 0
    if sum(wreath_dimension(ct, t) ** 2 for t in tuples) != wg.order:
        failures.append({"check": "wreath-dimensions", "q": q})
    for t1 in tuples:
        for t2 in tuples:
            cases += 1
            dot = 0
            for k, size in enumerate(sizes):
                dot = dot + size * chars[t1][k] * conjugate_value(chars[t2][k])
            expected = wg.order if t1 == t2 else 0
            if dot != expected:
                failures.append(
                    {
                        "check": "wreath-orthogonality",
                        "q": q,
                        "pair": [list(map(list, t1)), list(map(list, t2))],
                    }
                )
    return cases


def _check_factorization_lemma(ct, bound, failures):
    """Factorized characters against explicit traces, every irreducible."""
    cases = 0
    slots = len(ct.irreps)
    factor_sets = [
        ((0, (1,)),),
        ((0, (2,)),),
        ((0, (1, 1)),),
        ((0, (2,)), (0, (1,))),
    ]
    if slots > 1:
        factor_sets.append(((0, (2,)), (1, (1,))))
        factor_sets.append(((1, (2,)),))
    for q in range(1, bound + 1):
        if ct.group.order**q * _factorial(q) > 50000:
            raise InfeasibleError(f"brute force too large at q={q}")
        wg = WreathGroup(ct, q)
        for lam_tuple in enumerate_irreps(ct, q):
            chi = wg.irreducible_character(lam_tuple)
            dim = wreath_dimension(ct, lam_tuple)
            for factors in factor_sets:
                cases += 1
                image = tensor_algebra_image(wg, factors)
                actual = 0
                for idx, coeff in image.items():
                    actual = actual + coeff * chi[wg.class_of[idx]]
                actual = value_as_fraction(actual) / dim
                expected = factorized_character(lam_tuple, factors)
                if actual != expected:
                    failures.append(
                        {
                            "check": "factorization-lemma",
                            "q": q,
                            "irrep": [list(l) for l in lam_tuple],
                            "factors": [[s, list(r)] for s, r in factors],
                            "expected": str(expected),
                            "actual": str(actual),
                        }
                    )
    return cases


def _check_structure_constants(bound, failures):
    """Indicator products against explicit partial-permutation algebra."""
    cases = 0
    for total in range(2, bound + 1):
        for size_mu in range(1, total):
            size_nu = total - size_mu
            for mu in partitions_of(size_mu):
                for nu in partitions_of(size_nu):
                    cases += 1
                    q0 = total
                    lhs = Counter()
                    left = expand_indicator(mu, q0)
                    right = expand_indicator(nu, q0)
                    for p1, m1 in left.items():
                        for p2, m2 in right.items():
                            lhs[compose(p1, p2)] += m1 * m2
                    rhs = Counter()
                    for rho, coeff in product_coefficients(mu, nu).items():
                        for p, m in expand_indicator(rho, q0).items():
                            rhs[p] += coeff * m
                    lhs = +lhs
                    rhs = +rhs
                    if lhs != rhs:
                        failures.append(
                            {
                                "check": "structure-constants",
                                "mu": list(mu),
                                "nu": list(nu),
                            }
                        )
    return cases


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def cmd_verify(ns):
    scope = ns.scope
    failures = []
    checks = []
    group_specs = [ns.group] if ns.group else ["cyclic:2", "cyclic:3", "S3"]
    if scope in ("characters", "all"):
        cases = _check_character_tables(group_specs, failures)
        checks.append({"check": "character-table", "cases": cases})
        if not failures:
            total = 0
            for spec in group_specs:
                ct = _load_group(spec)
                if ct.group.order**2 * 2 <= 200:
                    total += _check_wreath_orthogonality(ct, 2, failures)
            checks.append({"check": "wreath-orthogonality", "cases": total})
    if scope in ("lemma", "all"):
        ct = _load_group(ns.group) if ns.group else builtin_group("cyclic:2")
        bound = int(ns.bound) if ns.bound else 3
        try:
            cases = _check_factorization_lemma(ct, bound, failures)
        except (ValueError, ZeroDivisionError, AssertionError) as exc:
            # an inconsistent table breaks the wreath character construction
            cases = 0
            failures.append({"check": "factorization-lemma", "error": str(exc)})
        checks.append({"check": "factorization-lemma", "cases": cases})
    if scope in ("structure-constants", "all"):
        bound = int(ns.bound) if ns.bound else 6
        cases = _check_structure_constants(bound, failures)
        checks.append({"check": "structure-constants", "cases": cases})
    if not checks:
        raise UsageError(f"unknown verify scope {scope!r}")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scope": scope,
        "checks": checks,
        "failures": failures,
        "passed": not failures,
    }
    _emit(json.dumps(doc, indent=2), ns.out)
    return 0 if not failures else 1


def cmd_report(ns):
    fam = _load_family(ns.family)
    grid = _parse_grid(ns.q_grid)
    if grid is None:
        raise UsageError("need --q-grid")
    slots = ct_slots(fam)
    quantities = []
    for slot in range(slots):
        quantities.append((3, [(slot, 1)]))
        quantities.append((3, [(slot, 2)]))
        quantities.append((4, [(slot, 2)]))
        quantities.append((3, [(slot, 1), (slot, 1)]))
    if slots > 1:
        quantities.append((3, [(0, 1), (1, 1)]))
    reports = []
    for condition, args in quantities:
        limit = _auto_limit(fam, condition, args)
        try:
            rep = convergence_report(
                fam,
                condition,
                args,
                grid,
                limit=limit,
                description=f"condition {condition} at {args}",
                workers=ns.workers,
            )
        except (ValueError, ZeroDivisionError) as exc:
            raise InfeasibleError(str(exc))
        reports.append(rep)
    verdicts = [r.verdict for r in reports if r.verdict is not None]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": fam.to_json(),
        "q_grid": grid,
        "reports": [r.to_json() for r in reports],
        "all_pass": all(verdicts) if verdicts else None,
    }
    try:
        doc["limits"] = family_limits(fam).to_json()
    except ValueError:
        doc["limits"] = None
    _emit(json.dumps(doc, indent=2), ns.out)
    return 0


# -------------------------------------------------------------------- main


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wreathprob",
        description="Exact asymptotics of canonical partition measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, family=False, grid=False, sampling=False):
        p.add_argument("--config", help="JSON file supplying these flags")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument(
            "--format", choices=("csv", "json"), default="json", help="output format"
        )
        p.add_argument("--workers", type=int, default=1)
        if family:
            p.add_argument("--family", help="family JSON: path or inline object")
        if grid:
            p.add_argument("--q", type=int)
            p.add_argument("--q-grid", dest="q_grid", help="comma list, e.g. 10,20,30")
        if sampling:
            p.add_argument("--n-samples", dest="n_samples", type=int)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("diagram", help="profile, measure, and cumulants of one partition")
    p.add_argument("partition", help="comma literal like 4,3,1; empty string for the empty diagram")
    common(p)

    p = sub.add_parser("group", help="validate and print a character table")
    p.add_argument("--group", help="builtin name (cyclic:N, S3, dihedral:N) or JSON path")
    common(p)

    p = sub.add_parser("family", help="describe a family: descriptor, limits, small-q measure")
    common(p, family=True, grid=True)

    p = sub.add_parser("moments", help="exact moments of per-slot indicators")
    p.add_argument("--rows", help="factors like 0:2,1;1:3")
    common(p, family=True, grid=True)

    p = sub.add_parser("cumulants", help="joint cumulants of indicator data")
    p.add_argument("--rows", help="factors like 0:2;0:1")
    p.add_argument(
        "--kind", choices=("natural", "disjoint", "free"), default="natural"
    )
    common(p, family=True, grid=True)

    p = sub.add_parser("limits", help="scaled-cumulant convergence over a q grid")
    p.add_argument("--rows", help="single-row factors like 0:2;0:2")
    p.add_argument("--condition", type=int, default=3, help="scaling condition 2, 3, or 4")
    p.add_argument("--limit", help="expected limit: 'auto', 'none', or p/q")
    p.add_argument("--tolerance", help="relative tolerance at the last grid point")
    common(p, family=True, grid=True)

    p = sub.add_parser("sample", help="Monte Carlo canonical-measure fluctuations")
    p.add_argument("--stats", help="statistics like R:0:3;character:0:2;p:0:2")
    common(p, family=True, grid=True, sampling=True)

    p = sub.add_parser("verify", help="brute-force oracle identities")
    p.add_argument(
        "--scope",
        choices=("characters", "lemma", "structure-constants", "all"),
        default="all",
    )
    p.add_argument("--group", help="builtin name or JSON path")
    p.add_argument("--bound", type=int, help="size bound for brute enumeration")
    common(p)

    p = sub.add_parser("report", help="aggregate limit report for one family")
    common(p, family=True, grid=True)

    return parser


COMMANDS = {
    "diagram": cmd_diagram,
    "group": cmd_group,
    "family": cmd_family,
    "moments": cmd_moments,
    "cumulants": cmd_cumulants,
    "limits": cmd_limits,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config(ns, argv)
        RunConfig.from_namespace(ns).validate()
        return COMMANDS[ns.command](ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible request: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
