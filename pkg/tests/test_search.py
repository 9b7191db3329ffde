import pytest

from psl2coset.ffield import make_field, prime_power
from psl2coset.mat2 import PSL, PGL, canon, psl2_order, unrank, group_order
from psl2coset.search import (ScanRow, brute_search, coset_all_divisible,
                              make_witness, none_doc, run_task, scan_q,
                              task_admissible, variety_search, verify_char2,
                              verify_paige, verify_thompson27)
from psl2coset.subgrp import Subgroup, closure, dihedral_2p, klein_four, normalizer


def admissible_dihedral_q(qmax, p=3):
    return [q for q in range(3, qmax + 1) if task_admissible("dihedral", p, q)]


def test_verify_paige_frozen():
    w = verify_paige()
    assert w.ctx.q == 53 and w.ambient == PSL
    assert w.g.text == "[[1,3],[28,32]]"
    assert [o for _, o in w.audit] == [26, 26, 26, 26]
    assert all(o % 2 == 0 for _, o in w.audit)


def test_verify_thompson27_frozen():
    w = verify_thompson27()
    assert w.ctx.q == 27
    assert w.g.text == "[[0,0,1,0,1,1],[1,1,0,0,1,2]]"
    assert sorted(o for _, o in w.audit) == [2, 14, 14, 14]


def test_verify_char2_frozen():
    w = verify_char2()
    assert w.ctx.q == 139
    assert w.g.text == "[[2,114],[114,35]]"
    assert len(w.audit) == 12
    assert all(o % 2 == 0 for _, o in w.audit)
    assert w.subgroup.order_stats() == {1: 1, 2: 3, 3: 8}


def test_klein_all_count_53(f53):
    found = brute_search(klein_four(f53), 2, mode="all")
    assert len(found) == 384
    # first-mode returns the least-index hit
    first = brute_search(klein_four(f53), 2, mode="first")
    assert first.g == found[0].g


def test_a4_absent_at_53(f53):
    N = normalizer(klein_four(f53))
    assert brute_search(N, 2, mode="all") == []
    assert brute_search(N, 2, mode="first") is None


def test_dihedral_threshold_scan_p3():
    """Witness absent at exactly {7, 13, 25, 31} among admissible q <= 100."""
    rows = scan_q("dihedral", 3, range(2, 101))
    assert [r.q for r in rows] == admissible_dihedral_q(100)
    absent = [r.q for r in rows if r.found == "false"]
    assert absent == [7, 13, 25, 31]
    assert all(r.found == "true" for r in rows if r.q >= 43)


def test_variety_witnesses_frozen():
    expected = {
        43: "[[1,33],[10,30]]",
        49: "[[0,1,0,6],[5,3,2,3]]",
        61: "[[1,54],[7,13]]",
        67: "[[1,64],[20,8]]",
    }
    for q, text in expected.items():
        ctx = make_field(*prime_power(q))
        w = variety_search(ctx, 3)
        assert w is not None and w.g.text == text
        assert w.method == "variety"
        assert coset_all_divisible(w.g, w.subgroup, 3)


def test_brute_variety_existence_agreement():
    for q in admissible_dihedral_q(100):
        ctx = make_field(*prime_power(q))
        v = variety_search(ctx, 3)
        b = brute_search(dihedral_2p(ctx, 3), 3, mode="first")
        assert (v is None) == (b is None), q


def test_pgl_ambient_agreement(f13):
    for q in (13, 43, 61):
        ctx = make_field(q)
        v = variety_search(ctx, 3, PGL)
        b = brute_search(dihedral_2p(ctx, 3, PGL), 3, mode="first")
        assert (v is None) == (b is None), q
        if v is not None:
            assert v.ambient == PGL
            assert coset_all_divisible(v.g, v.subgroup, 3)


def test_p5_direction():
    # 5 || q-1: 11, 31, 41, 61, 71 below 100; witnesses start much later
    # than for p=3 (the trace set holds a (p-1)/2p fraction of traces, so
    # the A-set thins as p grows)
    qs = [q for q in range(3, 72) if task_admissible("dihedral", 5, q)]
    assert qs == [11, 31, 41, 61, 71]
    for q in qs:
        ctx = make_field(q)
        v = variety_search(ctx, 5)
        b = brute_search(dihedral_2p(ctx, 5), 5, mode="first")
        assert v is None and b is None, q
    # the first p=5 witness in q order appears at q = 121 = 11^2
    w = variety_search(make_field(11, 2), 5)
    assert w is not None and w.g.text == "[[1,2,10,9],[10,2,10,2]]"
    w181 = variety_search(make_field(181), 5)
    assert w181 is not None and w181.g.text == "[[1,175],[116,29]]"


def test_conjugation_covariance(f53, rng):
    """Conjugating subgroup and witness together preserves the property."""
    V = klein_four(f53)
    w = brute_search(V, 2, mode="first")
    n = group_order(f53, PSL)
    for _ in range(5):
        t = unrank(f53, PSL, rng.randrange(n))
        ti = t.inverse()
        els = closure(f53, PSL, [t @ pt.rep @ ti for pt in V.elements])
        Vc = Subgroup(f53, PSL, els, V.kind, tuple(t @ g @ ti for g in V.generators))
        gc = canon(t @ w.g.rep @ ti, PSL)
        assert coset_all_divisible(gc, Vc, 2)


def test_workers_deterministic(f53):
    one = brute_search(klein_four(f53), 2, mode="all", workers=1)
    three = brute_search(klein_four(f53), 2, mode="all", workers=3)
    assert [w.g for w in one] == [w.g for w in three]
    f1 = brute_search(klein_four(f53), 2, mode="first", workers=1)
    f3 = brute_search(klein_four(f53), 2, mode="first", workers=3)
    assert f1.g == f3.g


def test_budget_guard(f53):
    with pytest.raises(ValueError):
        brute_search(klein_four(f53), 2, budget=10)


def test_make_witness_rejects_bad_coset(f53):
    V = klein_four(f53)
    ident = canon(unrank(f53, PSL, 0), PSL)
    # the identity coset is V itself: the identity has order 1
    with pytest.raises(ValueError):
        make_witness(V.elements[0], V, 2, "brute")


def test_none_doc_shape():
    doc = none_doc(7, 3, PSL, "variety", "dihedral")
    assert doc == {"found": False, "task": "dihedral", "q": 7, "p": 3,
                   "ambient": "psl", "method": "variety"}


def test_witness_json_deterministic(f53):
    a = verify_paige().to_json(task="klein")
    b = verify_paige().to_json(task="klein")
    assert a == b and a.endswith("\n")


def test_scan_rows_and_error_capture(monkeypatch):
    rows = scan_q("klein", 2, range(50, 70))
    assert [r.q for r in rows] == [53, 59, 61, 67]
    assert all(r.found == "true" for r in rows)
    assert all(r.ms is None for r in rows)

    import psl2coset.search as search_mod

    def boom(*a, **k):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(search_mod, "run_task", boom)
    rows = scan_q("klein", 2, [53])
    assert len(rows) == 1 and rows[0].found == "error"
    assert "synthetic failure" in rows[0].error
    assert rows[0].csv_fields()[3] == "error"


def test_run_task_methods(f53):
    w, count = run_task(f53, "klein", 2, which="all")
    assert count == 384 and w is not None
    w2, c2 = run_task(make_field(43), "dihedral", 3)
    assert w2.method == "variety" and c2 is None
    with pytest.raises(ValueError):
        run_task(f53, "klein", 2, mode="variety")
