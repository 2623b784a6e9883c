"""Acceptance gate: one test per verification criterion, each with a
wall-clock budget; all numeric comparisons are exact.

One test per criterion, printing a PASS/FAIL line with the timing; the
twelfth criterion checks that reports are byte-identical across worker
counts for a fixed seed (timing fields excluded).
"""

import json

import pytest

from cak.verify import CASES, DEFAULT_SEED, run_case, run_suite

CASE_FNS = dict(CASES)

# criterion number -> (case id, wall-clock bound in seconds)
CRITERIA = {
    1: ("c01_minimal_resolution", 10.0),
    2: ("c02_betti_formula", 60.0),
    3: ("c03_toric_kernel", 10.0),
    4: ("c04_ulrich_instances", 30.0),
    5: ("c05_power_minors", 20.0),
    6: ("c06_eagon_northcott", 30.0),
    7: ("c07_type_relation", 20.0),
    8: ("c08_duality_transfer", 60.0),
    9: ("c09_family_2x3", 60.0),
    10: ("c10_det_reduction", 30.0),
    11: ("c11_ar_checker", 60.0),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    case_id, bound = CRITERIA[number]
    result = run_case(case_id, CASE_FNS[case_id], DEFAULT_SEED, None)
    status = "PASS" if result.passed else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number:>2}: {status}  ({result.elapsed:.2f}s)  {case_id}")
    assert result.passed, f"criterion {number} failed: {result.error}"
    assert result.elapsed < bound, (
        f"criterion {number} exceeded its {bound}s bound ({result.elapsed:.1f}s)"
    )


def test_criterion_12_determinism(capsys):
    one = run_suite(workers=1, seed=DEFAULT_SEED)
    four = run_suite(workers=4, seed=DEFAULT_SEED)
    blob_one = json.dumps(one.as_dict(timing=False), sort_keys=True)
    blob_four = json.dumps(four.as_dict(timing=False), sort_keys=True)
    with capsys.disabled():
        status = "PASS" if blob_one == blob_four else "FAIL"
        print(f"\ncriterion 12: {status}  (byte-identical reports across worker counts)")
    assert one.passed and four.passed
    assert blob_one == blob_four
