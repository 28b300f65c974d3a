import pytest

from conftest import cycle_complex, path_complex, vertex_tuple

from cyclehom.codec import (
    CellCode,
    ComponentKey,
    CycleSpec,
    VertexCode,
    component_key,
    decode_cell,
    decode_vertex,
    encode_cell,
    encode_vertex,
    enumerate_cells,
    enumerate_vertices,
    facets_of_code,
    format_code,
    parse_code,
    plussable_positions,
)
from cyclehom.complexes import MultiHomCell, facets


def test_spec_rejects_c4_target():
    with pytest.raises(ValueError):
        CycleSpec(6, 4)


def test_spec_rejects_odd_source_for_strings():
    with pytest.raises(ValueError):
        CycleSpec(5, 5, "path")


def test_encode_examples():
    assert encode_vertex(CycleSpec(6, 9), (1, 9, 8, 9, 1, 9)) == VertexCode(1, (1, 2, 5))
    assert encode_vertex(CycleSpec(9, 5), (3, 4, 5, 1, 5, 1, 2, 1, 2)) == VertexCode(3, (4, 7))
    assert encode_vertex(CycleSpec(8, 8), (2, 1, 8, 7, 8, 1, 2, 1)) == VertexCode(2, (1, 2, 3, 7))


def test_encode_constant_winding():
    assert encode_vertex(CycleSpec(6, 3), (1, 2, 3, 1, 2, 3)) == VertexCode(1, ())


def test_encode_rejects_bad_steps():
    with pytest.raises(ValueError):
        encode_vertex(CycleSpec(6, 9), (1, 3, 4, 5, 6, 7))


def test_decode_examples():
    assert decode_vertex(CycleSpec(6, 9), VertexCode(1, (1, 2, 5))) == (1, 9, 8, 9, 1, 9)
    for i in (1, 2, 3):
        expect = tuple((i - 1 + k) % 3 + 1 for k in range(3)) * 2
        assert decode_vertex(CycleSpec(6, 3), VertexCode(i, ())) == expect


def test_decode_path_example():
    spec = CycleSpec(8, 5, "path")
    assert decode_vertex(spec, VertexCode(3, (3, 5, 7, 8))) == (3, 4, 5, 4, 5, 4, 5, 4)


def test_decode_rejects_infeasible_r():
    with pytest.raises(ValueError):
        decode_vertex(CycleSpec(6, 9), VertexCode(1, (1, 2)))  # m=6 != 9k+4
    with pytest.raises(ValueError):
        decode_vertex(CycleSpec(8, 5, "path"), VertexCode(5, (2, 4, 6, 8)))  # walks over n


def test_roundtrip_on_oracle_vertices():
    for m in range(3, 9):
        for n in (3, 5, 6, 7):
            spec = CycleSpec(m, n)
            for v in cycle_complex(m, n).cells(0):
                tup = vertex_tuple(v)
                assert decode_vertex(spec, encode_vertex(spec, tup)) == tup


def test_roundtrip_code_to_tuple():
    spec = CycleSpec(7, 3)
    for code in enumerate_vertices(spec):
        assert encode_vertex(spec, decode_vertex(spec, code)) == code


def test_enumerate_cell_counts_c9_c3():
    spec = CycleSpec(9, 3)
    assert len(enumerate_cells(spec, r=3, d=0)) == 252
    assert len(enumerate_cells(spec, r=3, d=1)) == 567
    # the long-quoted value 27 fails the euler constraint; 405 is correct
    assert len(enumerate_cells(spec, r=3, d=2)) == 405
    assert len(enumerate_cells(spec, r=3, d=3)) == 90


def test_enumerate_infeasible_is_empty():
    assert enumerate_cells(CycleSpec(9, 3), r=2, d=0) == []
    assert enumerate_cells(CycleSpec(9, 3), r=3, d=7) == []


def test_cells_match_oracle():
    for m in range(3, 9):
        for n in (3, 5, 6, 7, 8, 9):
            spec = CycleSpec(m, n)
            decoded = [decode_cell(spec, c) for c in enumerate_cells(spec)]
            assert len(decoded) == len(set(decoded))
            assert set(decoded) == set(cycle_complex(m, n).all_cells())


def test_path_cells_match_oracle():
    for m in (4, 6, 8):
        for n in range(2, 8):
            spec = CycleSpec(m, n, "path")
            decoded = [decode_cell(spec, c) for c in enumerate_cells(spec)]
            assert len(decoded) == len(set(decoded))
            assert set(decoded) == set(path_complex(m, n).all_cells())


def test_encode_cell_inverts_decode():
    for spec in (CycleSpec(7, 5), CycleSpec(6, 6), CycleSpec(6, 5, "path")):
        for code in enumerate_cells(spec):
            assert encode_cell(spec, decode_cell(spec, code)) == code


def test_plus_condition_blocks_successors():
    spec = CycleSpec(6, 9)
    assert plussable_positions(spec, 1, (1, 2, 5)) == [2, 5]
    with pytest.raises(ValueError):
        decode_cell(spec, CellCode(1, (1, 2, 5), 0b001))  # plus at 1, but 2 follows


def test_cell_dimension_is_plus_count():
    spec = CycleSpec(8, 8)
    code = parse_code("(2; 2, 3+, 6+, 8+)")
    assert code.dim == 3
    assert decode_cell(spec, code).dim == 3


def test_facet_example_full_closure_fan():
    spec = CycleSpec(8, 8)
    got = facets_of_code(spec, parse_code("(2; 2, 3+, 6+, 8+)"))
    want = {
        "(2; 2, 3, 6+, 8+)",
        "(2; 2, 4, 6+, 8+)",
        "(2; 2, 3+, 6, 8+)",
        "(2; 2, 3+, 7, 8+)",
        "(2; 2, 3+, 6+, 8)",
        "(4; 1, 2, 3+, 6+)",
    }
    assert {format_code(c) for c in got} == want


def test_facet_example_unplusing():
    spec = CycleSpec(6, 9)
    got = facets_of_code(spec, parse_code("(1; 1, 2+, 5)"))
    assert {format_code(c) for c in got} == {"(1; 1, 2, 5)", "(1; 1, 3, 5)"}


def test_every_one_cell_has_two_faces():
    spec = CycleSpec(7, 3)
    for code in enumerate_cells(spec, d=1):
        assert len(facets_of_code(spec, code)) == 2


def test_facets_reject_vertices():
    with pytest.raises(ValueError):
        facets_of_code(CycleSpec(6, 3), CellCode(1, (1, 3, 5)))


def test_facet_agreement_with_oracle():
    for (m, n, family) in [(6, 3, "cycle"), (5, 5, "cycle"), (6, 6, "cycle"), (6, 4, "path")]:
        spec = CycleSpec(m, n, family)
        for code in enumerate_cells(spec):
            if code.dim == 0:
                continue
            cell = decode_cell(spec, code)
            got = {decode_cell(spec, f) for f in facets_of_code(spec, code)}
            assert got == set(facets(cell)), format_code(code)


def test_edge_endpoints_share_returning_count():
    for spec in (CycleSpec(7, 5), CycleSpec(8, 6)):
        for code in enumerate_cells(spec, d=1):
            rs = {f.r for f in facets_of_code(spec, code)}
            assert rs == {code.r}


def test_component_keys_isolated_points():
    spec = CycleSpec(9, 3)
    k1 = component_key(spec, VertexCode(1, ()))
    k2 = component_key(spec, VertexCode(2, ()))
    assert k1 != k2
    assert k1.base == 1 and k2.base == 2


def test_component_keys_parity_on_even_targets():
    spec = CycleSpec(6, 6)
    pts = (2, 4, 6)
    assert component_key(spec, VertexCode(1, pts)) == component_key(spec, VertexCode(3, pts))
    assert component_key(spec, VertexCode(1, pts)) != component_key(spec, VertexCode(2, pts))


def test_component_keys_path_parity():
    spec = CycleSpec(8, 5, "path")
    a = component_key(spec, encode_vertex(spec, (1, 2, 1, 2, 1, 2, 1, 2)))
    b = component_key(spec, encode_vertex(spec, (3, 2, 3, 2, 3, 2, 3, 2)))
    c = component_key(spec, encode_vertex(spec, (2, 3, 2, 3, 2, 3, 2, 3)))
    assert a == b != c


def test_component_key_partition_matches_union_find():
    from cyclehom.homology import component_cells

    for (m, n) in [(6, 3), (8, 6), (9, 5), (7, 7)]:
        spec = CycleSpec(m, n)
        groups = component_cells(cycle_complex(m, n).all_cells())
        keys = []
        for group in groups:
            vertex_keys = {
                component_key(spec, encode_vertex(spec, vertex_tuple(c)))
                for c in group
                if c.dim == 0
            }
            assert len(vertex_keys) == 1
            keys.append(vertex_keys.pop())
        assert len(set(keys)) == len(groups)


def test_winding_number_may_be_negative():
    # m = 5, n = 3: r = 4 means k = -1 (backward winding)
    spec = CycleSpec(5, 3)
    assert spec.r_values() == [1, 4]
    tup = decode_vertex(spec, VertexCode(1, (1, 2, 3, 4)))
    assert encode_vertex(spec, tup).r == 4


def test_text_form_roundtrip():
    spec = CycleSpec(8, 8)
    for code in enumerate_cells(spec, r=4):
        assert parse_code(format_code(code)) == code


def test_text_form_empty_points():
    assert format_code(VertexCode(3, ())) == "(3;)"
    assert parse_code("(3;)") == CellCode(3, ())


def test_parse_rejects_garbage():
    for bad in ["", "1; 2", "(1: 2)", "(x; 1)"]:
        with pytest.raises(ValueError):
            parse_code(bad)
