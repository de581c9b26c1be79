import json
from fractions import Fraction

import pytest

from cubic_orders.exceptions import InputError
from cubic_orders.reporting import Table, format_value, render, to_document


@pytest.fixture
def tables():
    counts = Table("counts", ["n", "ratio", "exact"])
    counts.add({"n": 0, "ratio": Fraction(1, 1), "exact": True})
    counts.add({"n": 1, "ratio": Fraction(2, 4), "exact": False, "ignored": 7})
    notes = Table("notes", ["name", "value"])
    notes.add({"name": "a,b"})
    return [counts, notes]


def test_format_value():
    assert format_value(Fraction(6, 4)) == "3/2"
    assert format_value(Fraction(3)) == "3/1"
    assert format_value(True) is True
    assert format_value(5) == 5
    assert format_value(None) is None


def test_table_keeps_only_declared_columns(tables):
    assert tables[0].rows[1] == {"n": 1, "ratio": Fraction(1, 2), "exact": False}
    assert tables[1].rows[0] == {"name": "a,b", "value": None}


def test_render_csv(tables):
    assert render("demo", tables, "csv") == (
        "n,ratio,exact\n"
        "0,1/1,yes\n"
        "1,1/2,no\n"
        "\n"
        "name,value\n"
        '"a,b",\n'
    )


def test_render_csv_ignores_metadata(tables):
    assert render("demo", tables, "csv", {"m": 2}) == render("demo", tables, "csv")


def test_render_json(tables):
    text = render("demo", tables, "json", {"m": 2, "ratio": Fraction(1, 3)})
    assert text.endswith("}\n")
    document = json.loads(text)
    assert document == {
        "format": 1,
        "command": "demo",
        "metadata": {"m": 2, "ratio": "1/3"},
        "tables": {
            "counts": [
                {"n": 0, "ratio": "1/1", "exact": True},
                {"n": 1, "ratio": "1/2", "exact": False},
            ],
            "notes": [{"name": "a,b", "value": None}],
        },
    }


def test_render_text(tables):
    text = render("demo", tables[:1], "text", {"m": 2})
    assert text == (
        "# m: 2\n"
        "\n"
        "[counts]\n"
        "n  ratio  exact\n"
        "0    1/1    yes\n"
        "1    1/2     no\n"
    )


def test_render_is_deterministic(tables):
    for fmt in ("csv", "json", "text"):
        assert render("demo", tables, fmt, {"b": 1, "a": 2}) == render("demo", tables, fmt, {"b": 1, "a": 2})


def test_unknown_format(tables):
    with pytest.raises(InputError):
        render("demo", tables, "xml")


def test_to_document_model(tables):
    document = to_document("demo", tables)
    assert document.metadata == {}
    assert list(document.tables) == ["counts", "notes"]


def test_booleans_stay_native_in_json_only(tables):
    metadata = {"negative_m": True}
    assert json.loads(render("demo", tables, "json", metadata))["metadata"] == {"negative_m": True}
    assert render("demo", tables[:1], "text", metadata).startswith("# negative_m: yes\n")
