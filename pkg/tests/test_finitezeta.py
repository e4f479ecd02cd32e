import json

import pytest

from a2zeta.finitezeta import (ZETA, all_identities, class_number_bruteforce, group_elements,
                               group_order, polynomial_identity, terms, zeta_gl2_fq, zeta_su3_fq)


def test_identities():
    ids = all_identities()
    assert len(ids) == 7 and all(ids.values())


@pytest.mark.parametrize("group", list(ZETA))
@pytest.mark.parametrize("qv", [2, 4, 5, 7, 8, 11, 13, 16, 25])
def test_degree_sum_equals_order(group, qv):
    if group in ("SL3", "SU3") and qv % 3 == 0:
        return
    z = ZETA[group](qv)
    assert z.sum_md2 == group_order(group, qv)
    assert all(m > 0 and d > 0 for d, m in z.items())


def test_su3_q2_degrees():
    assert zeta_su3_fq(2).degrees == {1: 4, 2: 1, 3: 8, 6: 2, 8: 1}


def test_rejections():
    with pytest.raises(ValueError):
        zeta_su3_fq(9)
    with pytest.raises(ValueError):
        zeta_gl2_fq(6)
    with pytest.raises(ValueError):
        terms("SL3", 3)


def test_json():
    obj = json.loads(zeta_gl2_fq(5).to_json(classes_bruteforce=24))
    assert obj["group"] == "GL2" and obj["checks"]["classes_bruteforce"] == 24
    assert sum(e["m"] for e in obj["degrees"]) == 24
    assert obj["checks"]["sum_md2"] == obj["checks"]["order"] == 480


def test_wrong_formula_fails_identity(monkeypatch):
    import a2zeta.finitezeta as fz
    bad = list(fz.GL2_TERMS)
    bad[0] = (bad[0][0] + 1, bad[0][1])
    monkeypatch.setattr(fz, "GL2_TERMS", bad)
    assert not polynomial_identity("GL2")


@pytest.mark.parametrize("group, qv", [("SL3", 2), ("SU3", 2), ("GL2", 2), ("GL2", 5),
                                      ("GU2", 2), ("GU2", 3), ("H", 2), ("H", 3), ("SL3", 4)])
def test_class_number_bruteforce(group, qv):
    assert class_number_bruteforce(group, qv) == ZETA[group](qv).class_count


def test_group_sizes():
    for group, qv in [("SL3", 2), ("SU3", 2), ("GU2", 3), ("H", 3)]:
        G = group_elements(group, qv)[0]
        assert len(G) == group_order(group, qv)
