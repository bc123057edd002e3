"""Bundled presentations."""

from __future__ import annotations

import pytest

from knotslope.data import (DataError, builtin_names, load_builtin,
                            resolve_builtin)


def test_builtin_names():
    assert builtin_names() == ("trefoil", "figure8")


def test_resolve_aliases():
    assert resolve_builtin("trefoil") == "trefoil"
    assert resolve_builtin("3_1") == "trefoil"
    assert resolve_builtin("figure8") == "figure8"
    assert resolve_builtin("figure-eight") == "figure8"
    assert resolve_builtin("4_1") == "figure8"
    assert resolve_builtin("FIGURE8") == "figure8"
    assert resolve_builtin("granny") is None


def test_load_builtin_validates_and_caches():
    pres = load_builtin("trefoil")
    assert pres.generators == ("u", "v")
    assert load_builtin("trefoil") is pres  # cached
    fig8 = load_builtin("4_1")
    assert fig8.abelianization() == {"u": 1, "v": 1}


def test_load_builtin_unknown():
    with pytest.raises(DataError):
        load_builtin("granny")
