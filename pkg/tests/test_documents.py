import json

import pytest

import complicial as C
from complicial import documents as D
from complicial import errors


def corpus():
    return [
        C.delta_t(2, 2),
        C.complicial_horn(1, 2, 2)[0],
        C.th0(C.nerve(C.cyclic_group(2), 3)),
        C.quasicat_e(C.nerve(C.boolean_monoid(), 3)),
        C.boundary(0, 1),  # the empty complex round-trips too
    ]


def test_structural_roundtrip():
    for x in corpus():
        doc = D.complex_to_doc(x)
        assert D.doc_to_complex(doc) == x


def test_byte_roundtrip():
    for x in corpus():
        text = D.dumps(D.complex_to_doc(x, name="c"))
        again = D.dumps(D.complex_to_doc(D.doc_to_complex(json.loads(text)),
                                         name="c"))
        assert again == text


def test_parse_validates():
    doc = D.complex_to_doc(C.delta(1, 1))
    doc["faces"][0][0] = ["0:0", "0:9"]
    with pytest.raises(errors.DanglingReference):
        D.doc_to_complex(doc)
    doc["faces"][0][0] = ["0:0", "1:0"]
    with pytest.raises(errors.InvalidInput):
        D.doc_to_complex(doc)


def test_parse_rejects_bad_thin():
    doc = D.complex_to_doc(C.delta(1, 1))
    doc["thin"] = ["0:0"]
    with pytest.raises(errors.ThinVertex):
        D.doc_to_complex(doc)
    doc["thin"] = ["7:0"]
    with pytest.raises(errors.InvalidInput):
        D.doc_to_complex(doc)


def test_digest_is_stable():
    x = C.delta_t(1, 2)
    assert D.complex_digest(x) == D.complex_digest(C.delta_t(1, 2))
    assert D.complex_digest(x) != D.complex_digest(C.delta(1, 2))


def test_id_strings():
    s = C.SimplexId(2, 5)
    assert D.id_str(s) == "2:5"
    assert D.parse_id("2:5") == (2, 5)
    with pytest.raises(errors.InvalidInput):
        D.parse_id("nope")


def test_verify_payload_shape(th0_z2_3):
    report = C.verify_weak_complicial(th0_z2_3, 2)
    payload = D.verify_payload(report)
    assert payload["passed"] is True
    assert payload["checked_dims"] == 2
    assert all(set(r) == {"family", "k", "n", "instances", "failures",
                          "witnesses"} for r in payload["rows"])


def test_witness_serialization():
    report = C.verify_weak_complicial(C.delta(2, 2), 2)
    payload = D.verify_payload(report)
    bad = [r for r in payload["rows"] if r["failures"]]
    assert bad[0]["witnesses"][0]["faces"] == {"0": "1:4", "2": "1:1"}
    capped = D.verify_payload(report, witness_limit=0)
    assert all(r["witnesses"] == [] for r in capped["rows"])


def test_table_payload_roundtrips_to_json(th0_z2_3):
    t = C.tau_table(th0_z2_3, th0_z2_3.underlying.id_at(0, 0), 1)
    payload = D.table_payload(t)
    text = D.dumps(D.result_doc("tau", {}, payload))
    parsed = json.loads(text)
    assert parsed["payload"]["table"] == [[0, 1], [1, 0]]
    assert parsed["payload"]["relation"]["closure_needed"] is False
