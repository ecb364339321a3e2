"""
Verification suites run by `verify`, the /verify endpoint and the test harness.

Each suite sweeps a finite space (enumerated models, words up to a length,
or sampled formulas), returns how many checks it made and the failures it
found, and never raises for a failed check.
"""
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import config
from icl.appendix import EXPECTED_ERRATA, errata_as_expected, find_mismatches
from icl.classifier import (
    EVEN_IMPLICATIONS, ODD_IMPLICATIONS, REPRESENTATIVES, census, equivalent, is_irreducible,
    normalize, normalize_semantic, preceq, signature, verify_signature_criterion,
)
from icl.enumeration import (
    SearchBound, canonical_suite, check_validity, context, enumerate_rmodels,
    find_countermodel, isomorphic, suite_countermodel,
)
from icl.formula import (
    BOT, ONE, ZERO, And, Formula, Imp, IntNeg, NWord, Or, PerpNeg, Variable, all_nwords,
    nword_to_formula, parse_formula, parse_nword, render,
)
from icl.kripke import (
    RModel, forces, generated_submodel, imaginary_part, model_to_spec, truth_set, valid_in,
    validate_model,
)
from icl.poset import FIGURE_COVERS, build_poset, emit_dot

logger = logging.getLogger(__name__)

QUICK_FORMULA_SAMPLES = 50


@dataclass(frozen=True)
class VerifyOptions:
    max_len: int
    bound: SearchBound
    formula_samples: int
    seed: int

    @classmethod
    def from_config(
        cls,
        max_len: Optional[int] = None,
        bound: Optional[SearchBound] = None,
        formula_samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> "VerifyOptions":
        max_len = config.VERIFY_MAX_LEN if max_len is None else max_len
        if formula_samples is None:
            formula_samples = QUICK_FORMULA_SAMPLES if max_len <= 1 else config.FORMULA_SAMPLES
        return cls(
            max_len=max_len,
            bound=bound or config.default_bound(),
            formula_samples=formula_samples,
            seed=config.SAMPLE_SEED if seed is None else seed,
        )


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:10],
            "failure_count": len(self.failures),
            "seconds": round(self.seconds, 3),
        }


@dataclass
class VerificationReport:
    options: VerifyOptions
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[SuiteResult]:
        return next((r for r in self.results if not r.passed), None)

    def summary(self) -> str:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name:<22} {r.checks:>8} checks  {r.seconds:6.2f}s"
            for r in self.results
        ]
        failed = self.first_failure
        if failed is not None:
            lines.append(f"first failure in {failed.name}: {failed.failures[0]}")
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} suites passed")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_len": self.options.max_len,
            "bound": {"max_worlds": self.options.bound.max_worlds, "max_height": self.options.bound.max_height},
            "suites": [r.to_dict() for r in self.results],
        }


# --- Shared pools ---

def model_pool(bound: SearchBound) -> list[RModel]:
    """Every rooted model within the world limit (any height), their imaginary parts and the pseudo contexts."""
    rooted = list(enumerate_rmodels(SearchBound(bound.max_worlds)))
    pseudo = [ctx.model for ctx in canonical_suite() if not ctx.rooted]
    pseudo += [part for m in rooted if (part := imaginary_part(m)) is not None]
    return rooted + pseudo


def random_formula(rng: random.Random, depth: int, num_vars: int = 1) -> Formula:
    if depth == 0 or rng.random() < 0.2:
        leaves = [Variable(i) for i in range(1, num_vars + 1)] * 3 + [ZERO, ONE, BOT]
        return rng.choice(leaves)
    op = rng.choice(["~", "!", "&", "|", "->", "->"])
    if op == "~":
        return IntNeg(random_formula(rng, depth - 1, num_vars))
    if op == "!":
        return PerpNeg(random_formula(rng, depth - 1, num_vars))
    left, right = random_formula(rng, depth - 1, num_vars), random_formula(rng, depth - 1, num_vars)
    return {"&": And, "|": Or, "->": Imp}[op](left, right)


def sample_pairs(opts: VerifyOptions, models: list[RModel]) -> list[tuple[RModel, Formula]]:
    rng = random.Random(opts.seed)
    return [(rng.choice(models), random_formula(rng, 6)) for _ in range(opts.formula_samples)]


def _implication(a: NWord, b: NWord) -> Formula:
    return Imp(nword_to_formula(a), nword_to_formula(b))


# --- Suites ---

def suite_negation_definitions(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    for m in model_pool(opts.bound):
        for w in all_nwords(opts.max_len):
            checks += 1
            if truth_set(m, nword_to_formula(w)) != truth_set(m, nword_to_formula(w, defined=True)):
                failures.append(f"{render(w)} differs from its defined form in {model_to_spec(m)}")
    return checks, failures


def _monotone(m: RModel, f: Formula) -> bool:
    forced = truth_set(m, f)
    return all(v in forced for (u, v) in m.leq if u in forced)


def suite_monotonicity(opts: VerifyOptions) -> tuple[int, list[str]]:
    models = model_pool(opts.bound)
    checks, failures = 0, []
    for m, f in sample_pairs(opts, models):
        checks += 1
        if not _monotone(m, f):
            failures.append(f"{render(f)} is not upward closed in {model_to_spec(m)}")
    for m in models:
        for w in all_nwords(opts.max_len):
            checks += 1
            if not _monotone(m, nword_to_formula(w)):
                failures.append(f"{render(w)} is not upward closed in {model_to_spec(m)}")
    return checks, failures


def suite_locality(opts: VerifyOptions) -> tuple[int, list[str]]:
    rng = random.Random(opts.seed + 1)
    checks, failures = 0, []
    for m, f in sample_pairs(opts, model_pool(opts.bound)):
        u = rng.choice(m.worlds)
        checks += 1
        if forces(m, u, f) != forces(generated_submodel(m, u), u, f):
            failures.append(f"{render(f)} at {u} changes in the submodel generated by {u}")
    return checks, failures


def suite_root_fact(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    for m in model_pool(opts.bound):
        for w in all_nwords(opts.max_len):
            a = nword_to_formula(w)
            forced_a, forced_neg = truth_set(m, a), truth_set(m, PerpNeg(a))
            if not m.pseudo:
                checks += 1
                if (m.root in forced_neg) == (m.root in forced_a):
                    failures.append(f"root forces !{render(w)} and {render(w)} alike")
            for u in m.worlds:
                checks += 1
                refutes_neg = u not in forced_neg
                if refutes_neg != (not m.is_imaginary(u) and u in forced_a):
                    failures.append(f"world {u} refutes !{render(w)} against the root rule")
                if m.is_imaginary(u) and refutes_neg:
                    failures.append(f"imaginary world {u} refutes !{render(w)}")
    return checks, failures


def suite_evenness(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    p = Variable(1)
    for m in enumerate_rmodels(opts.bound):
        has_p = truth_set(m, p)
        for w in all_nwords(min(opts.max_len + 2, 8)):
            forced = truth_set(m, nword_to_formula(w))
            for u in m.worlds:
                checks += 1
                # forced even or refuted odd needs p somewhere above; the other two need not-p
                wants_p = (u in forced) == (w.parity == 0)
                witness = any(
                    m.is_imaginary(v) or ((v in has_p) == wants_p) for v in m.up(u)
                )
                if not witness:
                    state = "forces" if u in forced else "refutes"
                    failures.append(f"{u} {state} {render(w)} without a witness above it")
    return checks, failures


def suite_excluded_middle(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    lem = parse_formula("p | !p")
    for m in enumerate_rmodels(opts.bound):
        checks += 1
        if not valid_in(m, lem):
            failures.append(f"p | !p fails in {model_to_spec(m)}")
    checks += 1
    found = find_countermodel(parse_formula("!!p -> p"), opts.bound)
    if found is None or not isomorphic(found[0], context("m00").model):
        failures.append("!!p -> p is not refuted first by the two-world chain ○/○")
    return checks, failures


def suite_signature_criterion(opts: VerifyOptions) -> tuple[int, list[str]]:
    report = verify_signature_criterion(opts.max_len, opts.bound)
    failures = [
        f"{render(a)} -> {render(b)}: signatures say {s}, search says {o}"
        for a, b, s, o in report.disagreements
    ]
    return report.pairs_checked, failures


def suite_height_bound(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    words = all_nwords(opts.max_len)
    for a in words:
        for b in words:
            f = _implication(a, b)
            checks += 1
            if (find_countermodel(f, opts.bound) is None) != (suite_countermodel(f) is None):
                failures.append(f"{render(a)} -> {render(b)} needs a countermodel outside the six small models")
    return checks, failures


def suite_normalizer_agreement(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    for w in all_nwords(2 * opts.max_len):
        checks += 1
        rewritten, semantic = normalize(w), normalize_semantic(w)
        if rewritten != semantic:
            failures.append(f"{render(w)}: rewriting gives {render(rewritten)}, signatures give {render(semantic)}")
        elif not equivalent(w, rewritten):
            failures.append(f"{render(w)} is not equivalent to its normal form")
    return checks, failures


def suite_census_stability(opts: VerifyOptions) -> tuple[int, list[str]]:
    failures = []
    base = census(5)
    wide = census(max(5, opts.max_len + 2))
    if [c.representative for c in base] != list(REPRESENTATIVES):
        failures.append(f"census(5) representatives differ: {[render(c.representative) for c in base]}")
    if [c.representative for c in wide] != [c.representative for c in base]:
        failures.append("census changes beyond length 5")
    for c in wide:
        if len({m.parity for m in c.members}) != 1:
            failures.append(f"class of {render(c.representative)} mixes parities")
        if not all(is_irreducible(m) for m in c.irreducible_members):
            failures.append(f"shortest members of {render(c.representative)} are reducible")
    if len({signature(w) for w in all_nwords(2) if len(w) == 2}) != 4:
        failures.append("the four words of length 2 are not pairwise inequivalent")
    return len(base) + len(wide) + 1, failures


def suite_extremal_elements(opts: VerifyOptions) -> tuple[int, list[str]]:
    bottom = {0: parse_nword("~!p"), 1: parse_nword("~!!p")}
    top = {0: parse_nword("~~!!p"), 1: parse_nword("~~!p")}
    checks, failures = 0, []
    for w in all_nwords(min(opts.max_len + 2, 8)):
        checks += 2
        if not preceq(bottom[w.parity], w):
            failures.append(f"{render(bottom[w.parity])} is not below {render(w)}")
        if not preceq(w, top[w.parity]):
            failures.append(f"{render(w)} is not below {render(top[w.parity])}")
    return checks, failures


def suite_theorem_implications(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    for a, b in EVEN_IMPLICATIONS + ODD_IMPLICATIONS:
        checks += 2
        if not check_validity(_implication(a, b), opts.bound):
            failures.append(f"{render(a)} -> {render(b)} has a countermodel")
        if suite_countermodel(_implication(b, a)) is None:
            failures.append(f"converse {render(b)} -> {render(a)} has no countermodel among the small models")
    checks += 1
    found = find_countermodel(parse_formula("!~~p -> !!~p"), opts.bound)
    if found is None or not isomorphic(found[0], context("V").model):
        failures.append("!~~p -> !!~p is not refuted first by the V model")
    return checks, failures


def suite_figure_fidelity(opts: VerifyOptions) -> tuple[int, list[str]]:
    failures = []
    poset = build_poset(True, opts.bound)
    if poset.hasse != FIGURE_COVERS:
        missing = sorted(FIGURE_COVERS - poset.hasse)
        extra = sorted(poset.hasse - FIGURE_COVERS)
        failures.append(f"covers differ from the figure: missing {missing}, extra {extra}")
    names = [n.name for n in poset.nodes]
    if not all(poset.leq("0", x) for x in names):
        failures.append("0 is not the bottom")
    if not all(poset.leq(x, "1") for x in names):
        failures.append("1 is not the top")
    if poset.discrepancies:
        failures.append(f"constant edges disagree with signatures: {list(poset.discrepancies)}")
    dot = emit_dot(poset).splitlines()
    if sum("[label=" in line for line in dot) != 18 or sum(" -> " in line for line in dot) != 23:
        failures.append("diagram does not have 18 nodes and 23 edges")
    plain = build_poset(False, opts.bound)
    if any(plain.node(a).label.parity != plain.node(b).label.parity for a, b in plain.order):
        failures.append("even and odd words are related without constants")
    return 6, failures


def suite_errata(opts: VerifyOptions) -> tuple[int, list[str]]:
    mismatches = find_mismatches()
    failures = []
    if not errata_as_expected(mismatches):
        found = sorted((render(m.word), m.context) for m in mismatches)
        failures.append(f"expected {len(EXPECTED_ERRATA)} errata cells, found {len(found)}: {found}")
    failures += [f"unexplained mismatch {render(m.word)} at {m.context}" for m in mismatches if m.justification is None]
    return 63 * 9, failures


def suite_extensionality(opts: VerifyOptions) -> tuple[int, list[str]]:
    words = all_nwords(min(opts.max_len, 5))
    prefixes = all_nwords(3)
    checks, failures = 0, []
    for x in words:
        for y in words:
            if x == y or not equivalent(x, y):
                continue
            for c in prefixes:
                checks += 1
                if not equivalent(x.prefixed(c), y.prefixed(c)):
                    failures.append(f"{render(x)} ≡ {render(y)} but not under prefix {render(c)[:-1]}")
    return checks, failures


def suite_imaginary_parts(opts: VerifyOptions) -> tuple[int, list[str]]:
    failures = []
    m = {cid: context(cid).model for cid in ("c0", "m00", "m01", "m11", "V", "i0", "i1", "i01")}
    pairs = [
        (imaginary_part(m["m00"]), m["i0"], "i(○/○) is i(○)"),
        (imaginary_part(m["m11"]), m["i1"], "i(●/●) is i(●)"),
        (imaginary_part(m["m01"]), imaginary_part(m["m11"]), "i(●/○) is i(●/●)"),
        (imaginary_part(m["V"]), m["i01"], "i(V) is i(○,●)"),
        (generated_submodel(m["V"], "a"), m["i0"], "V above its ○ top is i(○)"),
        (generated_submodel(m["m01"], "a"), m["i1"], "●/○ above its top is i(●)"),
    ]
    for got, want, claim in pairs:
        if got is None or not isomorphic(got, want):
            failures.append(f"expected {claim}")
    if imaginary_part(m["c0"]) is not None:
        failures.append("a single root has an imaginary part")
    if generated_submodel(m["V"], "r") != m["V"]:
        failures.append("the submodel generated by the root is not the model")
    return len(pairs) + 2, failures


def suite_plumbing(opts: VerifyOptions) -> tuple[int, list[str]]:
    checks, failures = 0, []
    for w in all_nwords(opts.max_len):
        checks += 2
        if parse_nword(render(w)) != w:
            failures.append(f"word {render(w)} does not survive rendering")
        f = nword_to_formula(w, defined=True)
        if parse_formula(render(f)) != f:
            failures.append(f"formula {render(f)} does not survive rendering")
    for _, f in sample_pairs(opts, [context("c0").model]):
        checks += 1
        if parse_formula(render(f)) != f:
            failures.append(f"formula {render(f)} does not survive rendering")
    for m in model_pool(opts.bound):
        checks += 1
        if validate_model(model_to_spec(m)) != m:
            failures.append(f"model {model_to_spec(m)} does not survive its JSON form")
    return checks, failures


def suite_cardinality_bound(opts: VerifyOptions) -> tuple[int, list[str]]:
    failures = []
    words = all_nwords(max(5, opts.max_len))
    patterns = {signature(w) for w in words}
    if len(patterns) > 32:
        failures.append(f"{len(patterns)} signature patterns exceed 32")
    if len(patterns) != 15:
        failures.append(f"{len(patterns)} classes observed instead of 15")
    for w in words:
        if signature(w)["c0"] == signature(w)["c1"]:
            failures.append(f"{render(w)} has the same value at ○ and ●")
    return len(words) + 2, failures


SUITES: list[tuple[str, Callable[[VerifyOptions], tuple[int, list[str]]]]] = [
    ("negation-definitions", suite_negation_definitions),
    ("monotonicity", suite_monotonicity),
    ("locality", suite_locality),
    ("root-fact", suite_root_fact),
    ("evenness", suite_evenness),
    ("excluded-middle", suite_excluded_middle),
    ("signature-criterion", suite_signature_criterion),
    ("height-bound", suite_height_bound),
    ("normalizer-agreement", suite_normalizer_agreement),
    ("census-stability", suite_census_stability),
    ("extremal-elements", suite_extremal_elements),
    ("theorem-implications", suite_theorem_implications),
    ("figure-fidelity", suite_figure_fidelity),
    ("errata", suite_errata),
    ("extensionality", suite_extensionality),
    ("imaginary-parts", suite_imaginary_parts),
    ("plumbing", suite_plumbing),
    ("cardinality-bound", suite_cardinality_bound),
]


def run_suite(name: str, suite, opts: VerifyOptions) -> SuiteResult:
    started = time.perf_counter()
    try:
        checks, failures = suite(opts)
    except Exception as e:
        logger.error(f"suite {name} raised: {str(e)}")
        checks, failures = 0, [f"raised {type(e).__name__}: {str(e)}"]
    result = SuiteResult(name, not failures, checks, failures, time.perf_counter() - started)
    if failures:
        logger.warning(f"suite {name} failed: {failures[0]}")
    else:
        logger.info(f"suite {name} passed ({checks} checks)")
    return result


def run_verification(opts: Optional[VerifyOptions] = None, only: Optional[list[str]] = None) -> VerificationReport:
    """Run every suite (or the named ones) and collect the results."""
    opts = opts or VerifyOptions.from_config()
    logger.info(f"verification with words up to {opts.max_len}, bound {opts.bound}")
    report = VerificationReport(opts)
    for name, suite in SUITES:
        if only is None or name in only:
            report.results.append(run_suite(name, suite, opts))
    return report
