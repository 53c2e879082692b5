import json
from math import comb

import pytest

from flagvec import (
    DeskScaleExceeded,
    FaceLattice,
    FaceNotInLattice,
    InvalidParams,
    build_crosspolytope,
    build_cube,
    build_cyclic,
    build_polygon,
    build_simplex,
    dual,
    quotient,
)
from flagvec.lattice import MAX_FACES_ENV


def test_simplex_f_vectors():
    assert tuple(build_simplex(0).f_vector()) == ()
    assert build_simplex(0).face_count() == 2  # empty face and the point
    assert tuple(build_simplex(3).f_vector()) == (4, 6, 4)
    assert tuple(build_simplex(6).f_vector()) == (7, 21, 35, 35, 21, 7)


def test_simplex_is_all_subsets():
    L = build_simplex(4)
    assert L.face_count() == 2 ** 5
    for r in range(-1, 5):
        assert len(L.faces(r)) == comb(5, r + 1)


def test_cyclic_f_vectors():
    assert tuple(build_cyclic(5, 8).f_vector()) == (8, 28, 52, 50, 20)
    # n = d+1 degenerates to the simplex
    assert tuple(build_cyclic(7, 8).f_vector()) == (8, 28, 56, 70, 56, 28, 8)
    # 2-neighbourly in dimension 6
    f = build_cyclic(6, 10).f_vector()
    assert f[1] == comb(10, 2) == 45
    assert f[2] == comb(10, 3) == 120


def test_cyclic_on_minimal_vertices_is_the_simplex():
    for d in range(2, 8):
        assert build_cyclic(d, d + 1) == build_simplex(d)
        assert (build_cyclic(d, d + 1).flag_vector()
                == build_simplex(d).flag_vector())


def test_cyclic_needs_enough_vertices():
    with pytest.raises(InvalidParams):
        build_cyclic(5, 5)
    with pytest.raises(InvalidParams):
        build_cyclic(1, 5)


def test_cube_crosspolytope_polygon():
    assert tuple(build_cube(3).f_vector()) == (8, 12, 6)
    assert tuple(build_crosspolytope(4).f_vector()) == (8, 24, 32, 16)
    assert tuple(build_polygon(5).f_vector()) == (5, 5)
    with pytest.raises(InvalidParams):
        build_polygon(2)
    with pytest.raises(InvalidParams):
        build_cube(0)


def test_crosspolytope_is_dual_of_cube():
    for d in (2, 3, 4):
        assert (build_crosspolytope(d).flag_vector()
                == build_cube(d).dual().flag_vector())


def test_euler_relation_on_builders(small_corpus):
    for L in small_corpus:
        f = L.f_vector()
        assert sum((-1) ** i * fi for i, fi in enumerate(f)) == 1 - (-1) ** L.d


def test_dual_basics():
    s4 = build_simplex(4)
    assert tuple(dual(s4).f_vector()) == tuple(s4.f_vector())
    assert tuple(dual(build_cube(3)).f_vector()) == (6, 12, 8)
    # the vertex count of the dual is the facet count of the original
    assert dual(build_cyclic(5, 8)).flag_number((0,)) == 20


def test_dual_flag_identity(small_corpus):
    for L in small_corpus:
        v = L.flag_vector()
        w = L.dual().flag_vector()
        for S, value in v.entries.items():
            mirrored = tuple(sorted(L.d - 1 - s for s in S))
            assert w.get(mirrored) == value, (L, S)


def test_quotient_by_empty_face_is_identity():
    L = build_cube(3)
    assert quotient(L, ()) == L


def test_quotient_examples():
    tetra = build_simplex(3)
    vertex_figure = quotient(tetra, (0,))
    assert tuple(vertex_figure.f_vector()) == (3, 3)
    cube = build_cube(3)
    edge = next(iter(cube.faces(1)))
    assert tuple(quotient(cube, edge).f_vector()) == (2,)


def test_quotient_rank_arithmetic():
    L = build_cyclic(5, 7)
    for r in range(0, L.d):
        face = L.faces(r)[0]
        assert quotient(L, face).d == L.d - 1 - r


def test_quotient_rejects_foreign_faces():
    cube = build_cube(2)
    with pytest.raises(FaceNotInLattice):
        quotient(cube, (0, 3))  # a diagonal of the square is not a face
    with pytest.raises(InvalidParams):
        quotient(cube, cube.top())


def test_restriction_gives_face_as_polytope():
    cube = build_cube(3)
    square = next(f for f in cube.faces(2))
    R = cube.restriction(square)
    assert R.d == 2
    assert tuple(R.f_vector()) == (4, 4)


def test_flag_numbers_against_hand_counts(simplex5):
    # 2-faces of the 5-simplex times vertices per triangle
    two_faces = comb(6, 3)
    assert simplex5.flag_number((0, 2)) == two_faces * 3 == 60
    # full flags of the tetrahedron boundary
    assert build_simplex(3).flag_number((0, 1, 2)) == 4 * 3 * 2
    assert build_cyclic(5, 8).flag_number((0,)) == 8
    assert build_simplex(4).flag_number(()) == 1


def simplicial_flag_formula(L, S):
    value = len(L.faces(S[-1]))
    for a, b in zip(S, S[1:]):
        value *= comb(b + 1, a + 1)
    return value


@pytest.mark.parametrize("builder,args", [
    (build_simplex, (5,)),
    (build_simplex, (7,)),
    (build_crosspolytope, (5,)),
    (build_cyclic, (5, 12)),
    (build_cyclic, (6, 9)),
    (build_cyclic, (7, 12)),
])
def test_chain_enumeration_matches_simplicial_formula(builder, args):
    import itertools

    L = builder(*args)
    v = L.flag_vector()
    for size in range(1, L.d + 1):
        for S in itertools.combinations(range(L.d), size):
            assert v.get(S) == simplicial_flag_formula(L, S), S


def test_flag_vector_is_cached_and_complete(c58):
    v = c58.flag_vector()
    assert v is c58.flag_vector()
    assert v.complete
    assert len(v.entries) == 2 ** 5


def test_is_eulerian():
    assert build_simplex(4).is_eulerian()
    assert build_polygon(7).is_eulerian()
    assert build_cyclic(7, 10).is_eulerian()


def test_broken_lattice_is_not_eulerian():
    L = build_simplex(4)
    removed = L.faces(3)[0]
    faces = [(r, f) for r, f in L.all_faces() if not (r == 3 and f == removed)]
    assert not FaceLattice(4, faces).is_eulerian()


def test_json_round_trip(c58):
    text = c58.to_json()
    again = FaceLattice.from_json(text)
    assert again == c58
    assert json.loads(text)["d"] == 5


def test_desk_scale_guards(monkeypatch):
    with pytest.raises(DeskScaleExceeded):
        build_simplex(9)
    monkeypatch.setenv(MAX_FACES_ENV, "10")
    with pytest.raises(DeskScaleExceeded):
        build_cube(3)
    monkeypatch.delenv(MAX_FACES_ENV)
    build_cube(3)


def test_lattice_validation():
    with pytest.raises(InvalidParams):
        FaceLattice(1, [(0, (0,)), (1, (0, 1))])  # no empty face
    with pytest.raises(InvalidParams):
        FaceLattice(1, [(-1, ()), (0, (0, 1)), (1, (0, 1))])  # fat vertex
