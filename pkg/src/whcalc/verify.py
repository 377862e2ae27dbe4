"""Self-check suite: independent oracles, set identities, golden files.

Every numeric claim the package makes is recomputed here along at least
one second route — closed forms against the chart engine, admissible
counts against the dual generating function, literal Steenrod composites
against normalized expansions, rank-nullity bookkeeping for the
connecting map, and byte-exact regeneration of the pinned emissions.
The suite reports a pass/fail matrix per prime; irregular primes are
rejected before any check runs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources

from . import emit
from .ahss import (
    ChartTarget,
    build_e2,
    chart_window,
    einf_valuation,
    j_order_valuation,
    page_aggregate,
    run_differentials,
)
from .arith import OddPrime, ensure_regular
from .errors import WhcalcError
from .steenrod import (
    act_word_on_projective,
    adem_normalize,
    admissible_basis,
    annihilator_basis,
    milnor_dual_dims,
    word_degree,
)
from .stems import all_torsion_classes
from .torsion import sigma_c_torsion, torsion_window, wh_torsion_profile
from .whcohomology import (
    COKER_MAIN_PIECE,
    HP_PIECE,
    SIGMA_C_PIECE,
    delta_star_rank_data,
    delta_star_report,
    h_wh_report,
)

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass(frozen=True)
class CheckResult:
    p: int
    name: str
    status: str
    detail: str = ""


class _Failure(Exception):
    pass


# ---------------------------------------------------------------------------
# Individual checks.  Each takes (p, deep) and returns a detail string on
# success, None to signal a skip, or raises _Failure with a diagnostic.


def _check_torsion_vs_charts(p: OddPrime, deep: bool) -> str:
    """Closed-form profile == cokernel-of-J summand + chart engine."""
    top = torsion_window(p) - 1
    profile = wh_torsion_profile(p, top)
    chart = run_differentials(build_e2(p, ChartTarget.S_OF_CPBAR, top - 1))
    table = {e.degree: e.valuation for e in profile.entries}
    for d in range(1, top + 1):
        sigma = sigma_c_torsion(p, d)
        engine = (sigma.valuation if sigma else 0) + einf_valuation(
            chart, d - 1
        )
        if table.get(d, 0) != engine:
            raise _Failure(
                f"degree {d}: closed form {table.get(d, 0)}, engine {engine}"
            )
    return f"closed form matches the chart engine in degrees 1..{top}"


def _einf_torsion_cells(page) -> dict[tuple[int, int, str], int]:
    return {
        (s, t, c.label): c.valuation
        for (s, t), summands in page.cells.items()
        if t > 0
        for c in summands
    }


def _check_adjustment_sets(p: OddPrime, deep: bool) -> str:
    """Stunted-spectrum EINF cells == image-of-J EINF cells, plus the three
    cokernel-of-J families on low columns, minus alpha_bar(1)*b(mp) for
    m >= p-2."""
    top = chart_window(p, ChartTarget.S_OF_CPBAR) - 1
    jpage = run_differentials(build_e2(p, ChartTarget.J_OF_CP, top))
    spage = run_differentials(build_e2(p, ChartTarget.S_OF_CPBAR, top))
    degrees = {c.name: c.degree for c in all_torsion_classes(p)}
    expected = _einf_torsion_cells(jpage)
    for name in ("beta1", "alpha1_beta1", "beta1_sq"):
        t = degrees[name]
        for m in range(1, p.p - 2):
            k = m * p.p if name == "alpha1_beta1" else m
            if 2 * k + t <= top:
                expected[(2 * k, t, f"{name}*b({k})")] = 1
    t = degrees["alpha_bar(1)"]
    m = p.p - 2
    while 2 * m * p.p + t <= top:
        key = (2 * m * p.p, t, f"alpha_bar(1)*b({m * p.p})")
        if key not in expected:
            raise _Failure(f"removable cell {key} absent from the base chart")
        del expected[key]
        m += 1
    got = _einf_torsion_cells(spage)
    if got != expected:
        extra = sorted(set(got) - set(expected))[:3]
        missing = sorted(set(expected) - set(got))[:3]
        changed = sorted(
            k for k in set(got) & set(expected) if got[k] != expected[k]
        )[:3]
        raise _Failure(
            f"cell sets differ: extra={extra} missing={missing} "
            f"revalued={changed}"
        )
    return f"{len(got)} adjusted cells match through total degree {top}"


def _check_axis_orders(p: OddPrime, deep: bool) -> str:
    """Surviving image-of-J order per odd stem == the closed-form count of
    axis differentials entering minus leaving."""
    top = chart_window(p, ChartTarget.J_OF_CP) - 1
    page = run_differentials(build_e2(p, ChartTarget.J_OF_CP, top))
    stems = 0
    for n in range(1, (top + 1) // 2 + 1):
        got = einf_valuation(page, 2 * n - 1)
        want = j_order_valuation(p, n)
        if got != want:
            raise _Failure(f"stem {2 * n - 1}: chart {got}, closed form {want}")
        stems += 1
    return f"{stems} odd stems agree with the closed form"


def _check_conservation(p: OddPrime, deep: bool) -> str:
    """E2 aggregate - kill ledger == EINF aggregate, on all three charts."""
    for target in ChartTarget:
        top = chart_window(p, target) - 1
        e2 = build_e2(p, target, top)
        einf = run_differentials(e2)
        for d in range(0, top + 1):
            before = page_aggregate(e2, d)
            killed = einf.kill_ledger.get(d, 0)
            after = page_aggregate(einf, d)
            if before - killed != after:
                raise _Failure(
                    f"{target.value} total degree {d}: E2 {before} - "
                    f"kills {killed} != EINF {after}"
                )
    return "kill ledgers balance on all three charts"


def _check_basis_counts(p: OddPrime, deep: bool) -> str:
    """Admissible-monomial counts per degree == dual generating function."""
    bound = {3: 120, 5: 200}.get(p.p, 100) if deep else 48
    counts = Counter(m.degree(p) for m in admissible_basis(p, bound))
    dual = milnor_dual_dims(p, bound)
    if dict(counts) != dual:
        bad = sorted(
            d
            for d in set(counts) | set(dual)
            if counts.get(d, 0) != dual.get(d, 0)
        )
        raise _Failure(f"counts differ in degrees {bad[:5]}")
    return f"per-degree counts match the dual dimensions to degree {bound}"


def _check_annihilators(p: OddPrime, deep: bool) -> str:
    """The non-annihilating admissibles for y^-1 are exactly 1 and the
    single powers; at p=5 also the y^1 characterization by power chains."""
    bound = {3: 120, 5: 200}.get(p.p, 80) if deep else 40
    words = {m.word for m in admissible_basis(p, bound)}
    ann = {m.word for m in annihilator_basis(p, -1, bound, verify_span=True)}
    expected = {()} | {(i,) for i in range(1, bound // p.q + 1)}
    if words - ann != expected:
        raise _Failure(
            f"y^-1 complement mismatch: "
            f"{sorted(words - ann - expected)[:3]} unexpected, "
            f"{sorted(expected - (words - ann))[:3]} missing"
        )
    details = [f"y^-1 complement is 1 and the single powers to degree {bound}"]
    if deep and p.p == 5:
        ann1 = {
            m.word for m in annihilator_basis(p, 1, bound, verify_span=True)
        }
        chains = {()}
        chain = (1,)
        while word_degree(p, chain) <= bound:
            chains.add(chain)
            chain = (p.p * chain[0],) + chain
        if words - ann1 != chains:
            raise _Failure(
                f"y^1 complement mismatch: "
                f"{sorted(words - ann1 - chains)[:3]} unexpected, "
                f"{sorted(chains - (words - ann1))[:3]} missing"
            )
        details.append("y^1 complement is the descending power chains")
    return "; ".join(details)


def _raw_pairs(p: OddPrime, max_degree: int):
    singles = [0] + list(range(1, max_degree // p.q + 1))
    for x in singles:
        for y in singles:
            word = (x, y)
            if word_degree(p, word) <= max_degree:
                yield word


def _action_dict(p: OddPrime, combo, a: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for w, c in combo.word_dict().items():
        hit = act_word_on_projective(p, w, a)
        if hit is None:
            continue
        coeff, k = hit
        out[k] = (out.get(k, 0) + c * coeff) % p.p
    return {k: v for k, v in out.items() if v}


def _check_adem_action(p: OddPrime, deep: bool) -> str:
    """Literal composite action of raw length-2 words == the action of
    their normalized admissible expansion, on every class in range."""
    max_degree = 60 if deep else 24
    a_top = 40 if deep else 12
    checked = 0
    for word in _raw_pairs(p, max_degree):
        combo = adem_normalize(p, word)
        for a in range(-1, a_top + 1):
            hit = act_word_on_projective(p, word, a)
            literal = {} if hit is None else {hit[1]: hit[0] % p.p}
            literal = {k: v for k, v in literal.items() if v}
            normalized = _action_dict(p, combo, a)
            if literal != normalized:
                raise _Failure(
                    f"word {word} on y^{a}: literal {literal}, "
                    f"normalized {normalized}"
                )
            checked += 1
    return f"{checked} (word, class) actions agree"


def _totals(named: dict[str, dict[int, int]]) -> dict[int, int]:
    out: dict[int, int] = {}
    for dims in named.values():
        for d, v in dims.items():
            out[d] = out.get(d, 0) + v
    return out


def _check_delta_rank(p: OddPrime, deep: bool) -> str:
    """Rank-nullity for the connecting map: in every degree
    cok - ker == target - source, with cok == target - source alone in
    the injectivity range d <= 2p-3."""
    bound = max(30, 2 * p.p * p.p + 10) if deep else 30
    report = delta_star_report(p, bound)
    rank = delta_star_rank_data(p, bound)
    cok = _totals(report["coker"])
    ker_block = _totals(report["ker"])  # desuspended kernel: ker(d)=block(d-1)
    src = _totals(rank["source"])
    tgt = _totals(rank["target"])
    for d in range(0, bound + 1):
        lhs = cok.get(d, 0) - ker_block.get(d - 1, 0)
        rhs = tgt.get(d, 0) - src.get(d, 0)
        if lhs != rhs:
            raise _Failure(
                f"degree {d}: cok - ker = {lhs}, target - source = {rhs}"
            )
        if d <= 2 * p.p - 3 and cok.get(d, 0) != rhs:
            raise _Failure(
                f"degree {d} lies in the injectivity range but "
                f"cok {cok.get(d, 0)} != target - source {rhs}"
            )
    return f"rank-nullity identity holds in degrees 0..{bound}"


def _check_cohomology_additivity(p: OddPrime, deep: bool) -> str:
    """Report total == sum of the pieces; p=3 carries no kernel block."""
    bound = 60 if deep else 30
    report = h_wh_report(p, bound)
    if _totals(report.pieces) != report.total:
        raise _Failure("total differs from the sum of the pieces")
    if p.p == 3:
        want = {SIGMA_C_PIECE, HP_PIECE, COKER_MAIN_PIECE}
        if set(report.pieces) != want:
            raise _Failure(
                f"p=3 pieces {sorted(report.pieces)} != {sorted(want)}"
            )
    return f"pieces sum to the total through degree {bound}"


_GOLDEN_BUILDERS: dict[int, tuple] = {
    3: (
        ("pi_wh_p3_d24.json", lambda p: emit.pi_wh(p, 24)),
        ("cohomology_p3_d40.json", lambda p: emit.cohomology(p, 40)),
    ),
    5: (
        ("pi_wh_p5_d84.json", lambda p: emit.pi_wh(p, 84)),
        ("cohomology_p5_d60.json", lambda p: emit.cohomology(p, 60)),
    ),
}


def _check_golden(p: OddPrime, deep: bool) -> str | None:
    builders = _GOLDEN_BUILDERS.get(p.p)
    if builders is None:
        return None
    for fname, build in builders:
        command, payload = build(p)
        text = emit.envelope_text(command, payload)
        try:
            ref = (
                resources.files("whcalc")
                .joinpath("golden")
                .joinpath(fname)
                .read_text("utf-8")
            )
        except FileNotFoundError:
            raise _Failure(f"pinned emission {fname} is missing") from None
        if text != ref:
            raise _Failure(f"{fname} differs from the regenerated emission")
    return f"{len(builders)} pinned emissions regenerate byte-identically"


_CHECKS = (
    ("torsion-vs-charts", _check_torsion_vs_charts),
    ("chart-adjustment-sets", _check_adjustment_sets),
    ("axis-orders", _check_axis_orders),
    ("chart-conservation", _check_conservation),
    ("basis-counts", _check_basis_counts),
    ("annihilators", _check_annihilators),
    ("adem-action", _check_adem_action),
    ("delta-rank", _check_delta_rank),
    ("cohomology-additivity", _check_cohomology_additivity),
    ("golden-files", _check_golden),
)


def run_checks(primes: list[OddPrime], deep: bool = False) -> list[CheckResult]:
    """Run the whole suite for each prime.  Irregular primes raise
    PreconditionError up front; a check failing for any other reason is
    reported as a fail row, never swallowed."""
    results = []
    for p in primes:
        ensure_regular(p)
        for name, fn in _CHECKS:
            try:
                detail = fn(p, deep)
            except _Failure as exc:
                results.append(CheckResult(p.p, name, FAIL, str(exc)))
            except WhcalcError as exc:
                results.append(
                    CheckResult(p.p, name, FAIL, f"{type(exc).__name__}: {exc}")
                )
            else:
                if detail is None:
                    results.append(
                        CheckResult(
                            p.p, name, SKIP, "no pinned emissions for this prime"
                        )
                    )
                else:
                    results.append(CheckResult(p.p, name, PASS, detail))
    return results


def format_matrix(results: list[CheckResult]) -> str:
    """Human-readable pass/fail matrix plus a summary line."""
    width = max(len(r.name) for r in results)
    lines = [
        f"p={r.p}  {r.name:<{width}}  {r.status:<4}  {r.detail}"
        for r in results
    ]
    tally = Counter(r.status for r in results)
    lines.append(
        f"{tally.get(PASS, 0)} passed, {tally.get(FAIL, 0)} failed, "
        f"{tally.get(SKIP, 0)} skipped"
    )
    return "\n".join(lines)
