"""The compiled and pure canonical-form kernels must agree bit for bit."""
import pytest

from semap import _certpure
from semap.catalog import antiprism, archimedean, platonic, prism, rp2_catalog
from semap.flags import flag_system

_certfast = pytest.importorskip("semap._certfast")

SAMPLES = [
    platonic("tetrahedron").map,
    platonic("dodecahedron").map,
    prism(7).map,
    antiprism(5).map,
    archimedean("snub-cube").map,
    archimedean("great-rhombicuboctahedron").map,
    rp2_catalog()[0].map,
]


@pytest.mark.parametrize("m", SAMPLES, ids=lambda m: f"f0={m.vertex_count}")
def test_min_code_agrees(m):
    fs = flag_system(m)
    assert _certfast.min_code(fs.s0, fs.s1, fs.s2) == _certpure.min_code(
        fs.s0, fs.s1, fs.s2
    )


@pytest.mark.parametrize("m", SAMPLES, ids=lambda m: f"f0={m.vertex_count}")
def test_matching_starts_agree(m):
    fs = flag_system(m)
    assert _certfast.matching_starts(fs.s0, fs.s1, fs.s2) == _certpure.matching_starts(
        fs.s0, fs.s1, fs.s2
    )


def test_bfs_order_and_code_agree():
    m = archimedean("truncated-octahedron").map
    fs = flag_system(m)
    for start in (0, 17, fs.flag_count - 1):
        assert _certfast.bfs_order(fs.s0, fs.s1, fs.s2, start) == _certpure.bfs_order(
            fs.s0, fs.s1, fs.s2, start
        )
        assert _certfast.code_from(fs.s0, fs.s1, fs.s2, start) == _certpure.code_from(
            fs.s0, fs.s1, fs.s2, start
        )
