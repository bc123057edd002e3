"""Bundled reference presentations with load-time sanity checks."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .presentation import KnotPresentation, parse_presentation
from .representations import riley_family

_BUILTIN_FILES = {
    "trefoil": "trefoil.txt",
    "figure8": "figure8.txt",
}
_ALIASES = {
    "figure-eight": "figure8",
    "3_1": "trefoil",
    "4_1": "figure8",
}

#: meridian eigenvalue used for the numeric cross-check on load
_CHECK_M = 1.3
_CHECK_TOL = 1e-8


class DataError(ValueError):
    """A bundled presentation failed its consistency checks."""


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTIN_FILES)


def resolve_builtin(name: str) -> str | None:
    """Canonical builtin name for ``name``, or None if unknown."""
    name = name.strip().lower()
    if name in _BUILTIN_FILES:
        return name
    return _ALIASES.get(name)


@lru_cache(maxsize=None)
def load_builtin(name: str, check: bool = True) -> KnotPresentation:
    """Parse a bundled presentation; with ``check`` (default) also verify
    numerically that every Riley representation at a reference meridian
    eigenvalue satisfies the relators and has commuting peripheral images."""
    canonical = resolve_builtin(name)
    if canonical is None:
        raise DataError(f"unknown builtin presentation {name!r}; "
                        f"available: {', '.join(builtin_names())}")
    text = (resources.files("knotslope") / "_data" / _BUILTIN_FILES[canonical]) \
        .read_text(encoding="utf-8")
    pres = parse_presentation(text)
    if check:
        reps = riley_family(pres, _CHECK_M, tol=_CHECK_TOL)
        if not reps:
            raise DataError(f"builtin {canonical!r}: no Riley representations "
                            f"at M = {_CHECK_M}")
        for rep in reps:
            resid = rep.relator_residual()
            if resid > _CHECK_TOL * 10:
                raise DataError(f"builtin {canonical!r}: relator residual "
                                f"{resid:.2e} at t = {rep.riley_t}")
            m = rep.meridian_image()
            l = rep.longitude_image()
            comm = abs(m @ l - l @ m).max()
            if comm > _CHECK_TOL * 10:
                raise DataError(f"builtin {canonical!r}: peripheral images do "
                                f"not commute (residual {comm:.2e})")
    return pres
