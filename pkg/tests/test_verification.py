import sys
import time

import pytest

from icl import clear_caches
from icl.enumeration import DEFAULT_BOUND, SearchBound, enumerate_rmodels
from verification import SUITES, VerifyOptions, model_pool, random_formula, run_suite, run_verification

LIBRARY_OPERATIONS = {
    "icl.formula": ["parse_formula", "parse_nword", "render", "nword_to_formula", "all_nwords"],
    "icl.kripke": [
        "validate_model", "model_to_spec", "truth_set", "forces", "valid_in",
        "generated_submodel", "imaginary_part",
    ],
    "icl.enumeration": [
        "enumerate_rmodels", "find_countermodel", "check_validity", "suite_countermodel",
        "isomorphic", "canonical_form",
    ],
    "icl.classifier": [
        "formula_signature", "signature", "preceq", "equivalent", "normalize",
        "normalize_semantic", "is_irreducible", "census", "verify_signature_criterion",
    ],
    "icl.poset": ["build_poset", "hasse_edges", "ranks", "emit_dot"],
    "icl.appendix": ["load_fixture", "find_mismatches", "errata_as_expected"],
}


@pytest.fixture(scope="module")
def quick_report():
    return run_verification(VerifyOptions.from_config(max_len=1))


def test_quick_mode_options():
    opts = VerifyOptions.from_config(max_len=1, bound=SearchBound(3, 2))
    assert opts.formula_samples == 50
    assert opts.bound == SearchBound(3, 2)
    assert VerifyOptions.from_config(max_len=3, formula_samples=7).formula_samples == 7


def test_quick_mode_passes(quick_report):
    assert [r.name for r in quick_report.results] == [name for name, _ in SUITES]
    assert quick_report.ok, quick_report.summary()
    assert quick_report.first_failure is None


def test_summary_lists_every_suite(quick_report):
    lines = quick_report.summary().splitlines()
    assert sum(line.startswith("PASS") for line in lines) == len(SUITES)
    assert lines[-1] == f"{len(SUITES)}/{len(SUITES)} suites passed"


def test_report_as_dict(quick_report):
    data = quick_report.to_dict()
    assert data["ok"] is True
    assert data["max_len"] == 1
    assert {s["name"] for s in data["suites"]} == {name for name, _ in SUITES}
    assert all(s["failure_count"] == 0 for s in data["suites"])


def test_selected_suites_only():
    report = run_verification(VerifyOptions.from_config(max_len=1), only=["errata", "imaginary-parts"])
    assert [r.name for r in report.results] == ["errata", "imaginary-parts"]
    assert report.ok


def test_failing_suite_is_reported():
    def broken(opts):
        return 3, ["the first thing", "the second thing"]

    report = run_verification(VerifyOptions.from_config(max_len=1), only=[])
    report.results.append(run_suite("broken", broken, report.options))
    assert not report.ok
    assert report.first_failure.name == "broken"
    assert "first failure in broken: the first thing" in report.summary()


def test_raising_suite_becomes_a_failure():
    def explode(opts):
        raise RuntimeError("boom")

    result = run_suite("explode", explode, VerifyOptions.from_config(max_len=1))
    assert not result.passed
    assert result.failures == ["raised RuntimeError: boom"]


def test_random_formulas_are_reproducible():
    import random

    a = [random_formula(random.Random(5), 6) for _ in range(3)]
    b = [random_formula(random.Random(5), 6) for _ in range(3)]
    assert a == b


def test_quick_mode_enters_every_library_operation():
    entered = set()

    def profile(frame, event, arg):
        if event == "call":
            entered.add((frame.f_globals.get("__name__"), frame.f_code.co_name))

    clear_caches()
    sys.setprofile(profile)
    try:
        run_verification(VerifyOptions.from_config(max_len=1))
    finally:
        sys.setprofile(None)

    missing = [
        f"{module}.{name}"
        for module, names in LIBRARY_OPERATIONS.items()
        for name in names
        if (module, name) not in entered
    ]
    assert missing == []


def test_quick_mode_time_budget():
    clear_caches()
    start = time.perf_counter()
    report = run_verification(VerifyOptions.from_config(max_len=1))
    assert report.ok
    assert time.perf_counter() - start < 1.0


def test_model_pool_ignores_height_limit():
    rooted = [m for m in model_pool(DEFAULT_BOUND) if not m.pseudo]
    every_model = list(enumerate_rmodels(SearchBound(4)))
    assert rooted == every_model
    assert len(every_model) > len(list(enumerate_rmodels(DEFAULT_BOUND)))
    assert any(len(m.worlds) == 4 and len(m.leq) == 10 for m in rooted)


@pytest.mark.slow
def test_full_verification_passes():
    report = run_verification(VerifyOptions.from_config(max_len=6))
    assert report.ok, report.summary()
