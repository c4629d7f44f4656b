"""One test per acceptance criterion, each printing a PASS/FAIL line."""

import time

import pytest

from gzsystem.verify import acceptance_suite

_RESULTS = {}


def _suite():
    if not _RESULTS:
        start = time.perf_counter()
        for label, result in acceptance_suite(seed=0):
            _RESULTS[label] = result
        _RESULTS["_elapsed"] = time.perf_counter() - start
    return _RESULTS


LABELS = [
    "1 commutativity",
    "2 flow correctness",
    "3 flow commutation",
    "4 example",
    "5 solution polynomials",
    "6 Pfaffian signs",
    "7 round trips",
    "8 strong regularity on fibers",
    "9 torus freeness",
    "10 predicate equivalence",
    "11 nilfibre",
    "12 KKS isotropy",
]


@pytest.mark.parametrize("label", LABELS)
def test_criterion(label):
    result = _suite()[label]
    print(f"[{label}] {result.line()}")
    assert result.passed, result.line()


def test_suite_runtime():
    elapsed = _suite()["_elapsed"]
    print(f"[runtime] {'PASS' if elapsed < 300 else 'FAIL'} acceptance suite: {elapsed:.1f} s (limit 300 s)")
    assert elapsed < 300


if __name__ == "__main__":
    for label in LABELS:
        print(f"[{label}] {_suite()[label].line()}")
