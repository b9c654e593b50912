"""Symplectic action of twist words on first homology.

A right-handed twist about a curve with class v acts by the transvection
x -> x + <x, v> v.  A word acts right to left: ``t_a t_b`` applies t_b's
matrix first, so its image is the matrix product T_a @ T_b.  Entries are
Python integers (object arrays) so nothing can overflow.

The image is only a necessary condition for an identity to hold: the Torelli
group is invisible here, so agreement is reported as ``pass`` or ``vacuous``
and never as proof.
"""
from __future__ import annotations

import numpy as np

from .surface import CurveConfig, symplectic_form
from .words import TwistWord

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"

CONVENTION = "right-handed twist = transvection x -> x + <x,v>v with <x,v> = x^T J v; " \
             "J = diag([[0,1],[-1,0]]) over (alpha_1, beta_1, ...); words act right to left"


class OracleError(ValueError):
    pass


def identity(n: int) -> np.ndarray:
    return np.identity(n, dtype=int).astype(object)


def is_symplectic(M: np.ndarray) -> bool:
    J = symplectic_form(M.shape[0] // 2)
    return np.array_equal(M.T.dot(J).dot(M), J)


def transvection(v, sign: int = 1, g: int | None = None) -> np.ndarray:
    v = np.array([int(c) for c in v], dtype=object)
    if g is not None and len(v) != 2 * g:
        raise OracleError(f"vector of length {len(v)} does not live in Z^{2 * g}")
    if len(v) % 2 or len(v) == 0:
        raise OracleError(f"vector length {len(v)} is not a positive even number")
    if sign not in (1, -1):
        raise OracleError(f"sign must be +1 or -1, got {sign}")
    J = symplectic_form(len(v) // 2)
    # <x, v> v = v (x^T J v) = (v v^T J^T) x
    M = identity(len(v)) + sign * np.outer(v, v).dot(J.T)
    assert is_symplectic(M)
    return M


def word_image(w: TwistWord, cfg: CurveConfig | None = None) -> np.ndarray:
    cfg = cfg or w.config
    M = identity(2 * cfg.genus)
    for gen in w.letters:
        M = M.dot(transvection(cfg.curve(gen.curve).homology, gen.sign))
    return M


def check_identity(lhs: TwistWord, rhs: TwistWord, cfg: CurveConfig | None = None) -> str:
    cfg = cfg or lhs.config
    L, R = word_image(lhs, cfg), word_image(rhs, cfg)
    if not np.array_equal(L, R):
        return FAIL
    if np.array_equal(L, identity(L.shape[0])):
        return VACUOUS
    return PASS


def format_matrix(M: np.ndarray) -> str:
    width = max(len(str(x)) for x in M.flat)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in M)
