import json

import pytest

from factories import hirzebruch_pair, rp4_template, s4_template
from toricorigami import (
    DocumentError,
    OrigamiTemplate,
    UnboundedError,
    validate,
)
from toricorigami.document import (
    document_from_template,
    format_rational,
    parse_rational,
    parse_template,
)


def doc_of(T):
    # through JSON text to exercise the full wire format
    return json.loads(json.dumps(document_from_template(T)))


class TestRationals:
    def test_integers(self):
        assert parse_rational(5, "x") == 5
        assert parse_rational("-3", "x") == -3

    def test_fraction_strings(self):
        assert parse_rational("3/2", "x") * 2 == 3
        assert format_rational(parse_rational("-7/4", "x")) == "-7/4"

    def test_whole_values_have_no_denominator(self):
        assert format_rational(parse_rational("4/2", "x")) == "2"

    def test_floats_rejected(self):
        with pytest.raises(DocumentError):
            parse_rational(0.5, "x")

    def test_booleans_rejected(self):
        with pytest.raises(DocumentError):
            parse_rational(True, "x")

    def test_garbage_rejected(self):
        with pytest.raises(DocumentError):
            parse_rational("1/0", "x")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "make", [s4_template, rp4_template, hirzebruch_pair]
    )
    def test_parse_of_serialize_is_equal(self, make):
        T = make()
        again = parse_template(doc_of(T))
        assert again == T
        assert validate(again).valid == validate(T).valid

    def test_names_preserved(self):
        T = OrigamiTemplate(
            s4_template().polytopes,
            s4_template().fusions,
            names=("north", "south"),
        )
        assert parse_template(doc_of(T)).names == ("north", "south")

    def test_serialized_offsets_are_strings(self):
        doc = document_from_template(s4_template())
        for poly in doc["polytopes"]:
            for hs in poly["halfspaces"]:
                assert isinstance(hs["offset"], str)


class TestParseErrors:
    def base_doc(self):
        return doc_of(s4_template())

    def test_dimension_required(self):
        doc = self.base_doc()
        del doc["dimension"]
        with pytest.raises(DocumentError, match="dimension"):
            parse_template(doc)

    def test_polytopes_required(self):
        with pytest.raises(DocumentError, match="polytopes"):
            parse_template({"dimension": 2, "polytopes": []})

    def test_normal_length_checked(self):
        doc = self.base_doc()
        doc["polytopes"][0]["halfspaces"][0]["normal"] = [1]
        with pytest.raises(DocumentError, match="normal"):
            parse_template(doc)

    def test_float_normal_rejected(self):
        doc = self.base_doc()
        doc["polytopes"][0]["halfspaces"][0]["normal"] = [0.5, 1]
        with pytest.raises(DocumentError, match="normal"):
            parse_template(doc)

    def test_fusion_polytope_range(self):
        doc = self.base_doc()
        doc["fusions"][0]["a"]["polytope"] = 7
        with pytest.raises(DocumentError, match="polytope"):
            parse_template(doc)

    def test_fusion_type_checked(self):
        doc = self.base_doc()
        doc["fusions"][0]["type"] = "tripled"
        with pytest.raises(DocumentError, match="type"):
            parse_template(doc)

    def test_pair_needs_distinct_facets(self):
        doc = self.base_doc()
        doc["fusions"][0]["b"] = dict(doc["fusions"][0]["a"])
        with pytest.raises(DocumentError, match="distinct"):
            parse_template(doc)

    def test_geometry_errors_propagate(self):
        doc = {
            "dimension": 2,
            "polytopes": [
                {"halfspaces": [
                    {"normal": [-1, 0], "offset": 0},
                    {"normal": [0, -1], "offset": 0},
                ]}
            ],
            "fusions": [],
        }
        with pytest.raises(UnboundedError):
            parse_template(doc)


class TestFacetRemapping:
    def test_redundant_halfspace_shifts_indices(self):
        # insert a redundant inequality before the hypotenuse: the fusion
        # written against the document indices must land on the hypotenuse
        doc = {
            "dimension": 2,
            "polytopes": [
                {
                    "name": "padded-triangle",
                    "halfspaces": [
                        {"normal": [-1, 0], "offset": 0},
                        {"normal": [0, -1], "offset": 0},
                        {"normal": [1, 1], "offset": 99},
                        {"normal": [1, 1], "offset": 2},
                    ],
                },
                {
                    "name": "plain-triangle",
                    "halfspaces": [
                        {"normal": [-1, 0], "offset": 0},
                        {"normal": [0, -1], "offset": 0},
                        {"normal": [1, 1], "offset": 2},
                    ],
                },
            ],
            "fusions": [
                {
                    "type": "pair",
                    "a": {"polytope": 0, "facet": 3},
                    "b": {"polytope": 1, "facet": 2},
                }
            ],
        }
        T = parse_template(doc)
        assert len(T.polytopes[0].halfspaces) == 3
        assert T.fusions[0].a.facet == 2
        assert validate(T).valid

    def test_reference_to_removed_halfspace_rejected(self):
        doc = {
            "dimension": 2,
            "polytopes": [
                {
                    "halfspaces": [
                        {"normal": [-1, 0], "offset": 0},
                        {"normal": [0, -1], "offset": 0},
                        {"normal": [1, 1], "offset": 99},
                        {"normal": [1, 1], "offset": 2},
                    ],
                }
            ],
            "fusions": [
                {"type": "single", "a": {"polytope": 0, "facet": 2}}
            ],
        }
        with pytest.raises(DocumentError, match="redundant"):
            parse_template(doc)
