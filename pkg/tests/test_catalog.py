import json

import pytest

from conftest import nil12_qbal, nil12_qsg, nil_qgau, solv_third
from hha.catalog import (
    UnknownEntryError,
    check_entry,
    entry_names,
    get_example,
    run_report,
)
from hha.documents import load_document, parse_input


def test_entry_names_cover_spec_list():
    names = set(entry_names())
    expected = {
        "qbal12", "qbal16", "qbal20",
        "qsg12", "qsg16", "qsg20",
        "qgau8", "qgau12", "qgau16", "qgau20", "qgau24",
        "solv_aff_c", "solv_rank1", "solv_third",
        "joyce_su2", "joyce_su2xsu2", "joyce_su3",
        "abelian4", "abelian8", "abelian12", "abelian16",
    }
    assert expected <= names


def test_unknown_entry_raises():
    with pytest.raises(UnknownEntryError):
        get_example("not_a_thing")


def test_catalog_algebras_match_independent_encodings():
    # the catalog input documents reproduce the independently coded algebras
    cases = {
        "qbal12": nil12_qbal(),
        "qsg12": nil12_qsg(),
        "qgau8": nil_qgau(2),
        "qgau16": nil_qgau(4),
        "solv_third": solv_third(),
    }
    for name, reference in cases.items():
        entry = get_example(name)
        geom, _ = entry.load()
        assert geom.algebra.brackets == reference.brackets, name


def test_entry_round_trips_through_serialization():
    for name in ("qbal12", "qsg16", "solv_aff_c"):
        entry = get_example(name)
        text = json.dumps(entry.input_data)
        doc = parse_input(text)
        geom, metric = load_document(doc)
        geom2, metric2 = entry.load()
        assert geom.algebra.brackets == geom2.algebra.brackets
        assert metric.omega == metric2.omega


def test_selected_entries_pass():
    for name in ("qbal12", "qsg12", "qgau8", "solv_rank1", "joyce_su2", "abelian8"):
        outcome = check_entry(get_example(name))
        assert outcome.passed, [
            (c.label, c.detail) for c in outcome.checks if not c.passed
        ]


def test_run_report_orders_by_name():
    outcomes = run_report(["qsg12", "qbal12"])
    assert [o.name for o in outcomes] == ["qbal12", "qsg12"]
