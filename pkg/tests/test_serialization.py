import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import chromoid as ch
from cases import cyclic_table, hamming


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(ch.canonical_dumps(doc), encoding="utf-8")
    return p


def test_category_round_trip_bytes(tmp_path):
    g, _ = hamming(2, 2)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    ch.save_category(g, p1)
    loaded = ch.load_category(p1)
    assert isinstance(loaded, ch.FinGroupoid)
    ch.save_category(loaded, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_plain_category_round_trip(tmp_path):
    g, _ = hamming(1, 2)
    p = tmp_path / "c.json"
    ch.save_category(g.base, p)
    loaded = ch.load_category(p)
    assert not isinstance(loaded, ch.FinGroupoid)
    assert loaded == g.base


def test_coloring_round_trip_bytes(tmp_path):
    g, col = hamming(2, 2)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    ch.save_coloring(g, col, p1)
    loaded = ch.load_coloring(p1, g)
    ch.save_coloring(g, loaded, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert loaded.assign == col.assign


def test_functor_round_trip(tmp_path):
    g, col = hamming(1, 2)
    qr = ch.build_quotient(g, col)
    pi = ch.universal_functor(g, col, qr)
    ch.save_category(g, tmp_path / "src.category.json")
    ch.save_coloring(g, col, tmp_path / "src.coloring.json")
    ch.save_category(qr.u, tmp_path / "tgt.category.json")
    ch.save_coloring(qr.u, ch.discrete_coloring(qr.u), tmp_path / "tgt.coloring.json")
    refs = lambda stem: {"category": f"{stem}.category.json", "coloring": f"{stem}.coloring.json"}
    p1, p2 = tmp_path / "f.json", tmp_path / "g.json"
    ch.save_functor(pi, p1, refs("src"), refs("tgt"))
    loaded = ch.load_functor(p1)
    assert (loaded.f_obj, loaded.f_mor, loaded.gamma) == (pi.f_obj, pi.f_mor, pi.gamma)
    ch.save_functor(loaded, p2, refs("src"), refs("tgt"))
    assert p1.read_bytes() == p2.read_bytes()
    # The loaded functor still satisfies the laws against the loaded pair.
    assert ch.check_colored_functor(loaded).ok


def test_canonical_form_properties(tmp_path):
    g, col = hamming(1, 3)
    p = tmp_path / "c.json"
    ch.save_coloring(g, col, p)
    text = p.read_text()
    assert text.endswith("\n")
    doc = json.loads(text)
    assert doc["format"] == "chromoid/1"
    assert list(doc) == sorted(doc)


def test_format_key_required(tmp_path):
    p = write(tmp_path, "bad.json", {"objects": []})
    with pytest.raises(ch.SerializationError, match="format"):
        ch.load_category(p)


def test_invalid_json_reported_with_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  oops\n}\n")
    with pytest.raises(ch.SerializationError, match="line 2"):
        ch.load_category(p)


def test_missing_file(tmp_path):
    with pytest.raises(ch.SerializationError, match="cannot read"):
        ch.load_category(tmp_path / "absent.json")


def _tiny_category_doc():
    return {
        "format": "chromoid/1",
        "objects": ["x"],
        "morphisms": [{"name": "id", "src": "x", "tgt": "x"}],
        "identities": {"x": "id"},
        "compose": [["id", "id", "id"]],
    }


def test_missing_keys_named(tmp_path):
    for key in ("objects", "morphisms", "identities", "compose"):
        doc = _tiny_category_doc()
        del doc[key]
        p = write(tmp_path, "bad.json", doc)
        with pytest.raises(ch.SerializationError, match=key):
            ch.load_category(p)


def test_unknown_object_in_morphism(tmp_path):
    doc = _tiny_category_doc()
    doc["morphisms"][0]["tgt"] = "y"
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="'y'"):
        ch.load_category(p)


def test_missing_identity_named(tmp_path):
    doc = _tiny_category_doc()
    doc["identities"] = {}
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="'x'"):
        ch.load_category(p)


def test_non_composable_compose_entry_rejected(tmp_path):
    doc = {
        "format": "chromoid/1",
        "objects": ["x", "y"],
        "morphisms": [
            {"name": "idx", "src": "x", "tgt": "x"},
            {"name": "idy", "src": "y", "tgt": "y"},
        ],
        "identities": {"x": "idx", "y": "idy"},
        "compose": [["idx", "idx", "idx"], ["idy", "idy", "idy"], ["idx", "idy", "idx"]],
    }
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="non-composable"):
        ch.load_category(p)


def test_incomplete_inverse_named(tmp_path):
    doc = _tiny_category_doc()
    doc["inverse"] = {}
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="'id'"):
        ch.load_category(p)


def test_coloring_error_names_morphism(tmp_path):
    g, col = hamming(1, 2)
    doc = ch.coloring_to_doc(g, col)
    del doc["assignment"]["1|0"]
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="'1\\|0'"):
        ch.load_coloring(p, g)


def test_coloring_undeclared_color(tmp_path):
    g, col = hamming(1, 2)
    doc = ch.coloring_to_doc(g, col)
    doc["assignment"]["1|0"] = "9"
    p = write(tmp_path, "bad.json", doc)
    with pytest.raises(ch.SerializationError, match="undeclared"):
        ch.load_coloring(p, g)


def test_coloring_unused_color_warns(tmp_path):
    g, col = hamming(1, 2)
    doc = ch.coloring_to_doc(g, col)
    doc["colors"].append("spare")
    p = write(tmp_path, "c.json", doc)
    with pytest.warns(UserWarning, match="spare"):
        loaded = ch.load_coloring(p, g)
    assert loaded.n_colors == col.n_colors


def test_functor_missing_map_entry(tmp_path):
    g, col = hamming(1, 2)
    F = ch.identity_functor(g, col)
    ch.save_category(g, tmp_path / "c.category.json")
    ch.save_coloring(g, col, tmp_path / "c.coloring.json")
    refs = {"category": "c.category.json", "coloring": "c.coloring.json"}
    doc = ch.functor_to_doc(F, refs, refs)
    del doc["morphism_map"]["0|1"]
    p = write(tmp_path, "f.json", doc)
    with pytest.raises(ch.SerializationError, match="'0\\|1'"):
        ch.load_functor(p)


def test_report_round_trip(tmp_path):
    g, col = hamming(2, 2)
    reports = [ch.check_colored_category(g, col), ch.check_inverse_compat(g, col)]
    p = tmp_path / "r.json"
    ch.save_report(reports, p)
    doc = ch.load_report(p)
    assert [c["status"] for c in doc["checks"]] == ["pass", "pass"]
    assert doc["checks"][0]["witnesses"] == []


def test_quotient_maps_document(tmp_path):
    g, col = hamming(3, 2)
    qr = ch.build_quotient(g, col)
    p = tmp_path / "m.json"
    ch.save_quotient_maps(g, col, qr, p)
    doc = json.loads(p.read_text())
    assert doc["s1"] == {"0": "[0]", "1": "[1]", "2": "[0]", "3": "[1]"}
    assert set(doc["s0"].values()) == {"[0]"}
    assert len(doc["pi_morphisms"]) == g.n_morphisms


@st.composite
def random_colored_groupoid(draw):
    orders = draw(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=2))
    gpd = ch.one_object_group(cyclic_table(orders[0]))
    if len(orders) == 2:
        gpd = ch.disjoint_union(gpd, ch.one_object_group(cyclic_table(orders[1])))
    n_colors = draw(st.integers(min_value=1, max_value=gpd.n_morphisms))
    labels = [
        f"c{draw(st.integers(min_value=0, max_value=n_colors - 1))}"
        for _ in range(gpd.n_morphisms)
    ]
    return gpd, ch.make_coloring(gpd, labels)


@settings(max_examples=40, deadline=None)
@given(random_colored_groupoid())
def test_round_trip_random(tmp_path_factory, pair):
    tmp_path = tmp_path_factory.mktemp("roundtrip")
    gpd, col = pair
    ch.save_category(gpd, tmp_path / "g1.json")
    g2 = ch.load_category(tmp_path / "g1.json")
    ch.save_category(g2, tmp_path / "g2.json")
    assert (tmp_path / "g1.json").read_bytes() == (tmp_path / "g2.json").read_bytes()
    ch.save_coloring(gpd, col, tmp_path / "c1.json")
    c2 = ch.load_coloring(tmp_path / "c1.json", g2)
    ch.save_coloring(g2, c2, tmp_path / "c2.json")
    assert (tmp_path / "c1.json").read_bytes() == (tmp_path / "c2.json").read_bytes()
