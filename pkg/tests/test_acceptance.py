"""One test per acceptance criterion, each over the built-in corpus.

Every test prints a ``criterion k (...): PASS/FAIL`` line, and the session
summary repeats them all.
"""

import pytest

from equihom.corpus import CHECKS, complex_corpus, load, pair_corpus, paramixed_instances, \
    point_corpus


def _run(k, acceptance_log):
    title, fn = CHECKS[k]
    results = fn()
    failed = [r.name for r in results if not r.passed]
    ok = bool(results) and not failed
    acceptance_log[k] = (title, ok, failed)
    print(f"criterion {k} ({title}): {'PASS' if ok else 'FAIL'}")
    for r in results:
        print(f"  {r.name}: {'ok' if r.passed else 'FAILED'} {r.details}")
    return results, failed


def test_corpus_covers_the_required_range():
    docs = load(complex_corpus())
    assert len(docs) >= 12
    assert all(d.group.order <= 8 for _, d in docs)
    assert any(not d.group.is_abelian() for _, d in docs)
    assert all(len(d.X.complex.all_simplices()) <= 40 for _, d in docs)
    stabs = [{d.X.stabilizer(s).order for s in d.X.complex.all_simplices()} for _, d in docs]
    assert any(s == {1} for s in stabs)
    assert any(len(s) > 1 for s in stabs)
    assert any(s == {d.group.order} and d.group.order > 1 for s, (_, d) in zip(stabs, docs))
    assert all(d.X.complex.dim == 0 for _, d in load(point_corpus()))
    pairs = load(pair_corpus())
    assert all(d.group.order <= 4 and d.X.complex.dim == 0 == d.Y.complex.dim for _, d in pairs)
    labels = [label for label, _, _ in paramixed_instances()]
    assert any("K_G" in label for label in labels) and any(lbl.startswith("Q/") for lbl in labels)


@pytest.mark.parametrize("k", sorted(CHECKS), ids=[f"criterion_{k}" for k in sorted(CHECKS)])
def test_criterion(k, acceptance_log):
    results, failed = _run(k, acceptance_log)
    assert results
    assert not failed, f"failing instances: {failed}"
