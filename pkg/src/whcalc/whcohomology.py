"""Mod-p cohomology of the Whitehead spectrum of a point, as graded
dimensions assembled from Steenrod-module pieces.

At an odd regular prime the cohomology splits into the suspended
cokernel-of-J piece, the suspended quaternionic projective piece, and a
block assembled (up to an extension, which preserves graded dimension)
from the cokernel and shifted kernel of a connecting homomorphism
delta*.  delta* maps a sum of shifted copies of A//E_1, one for each
even cell of the p-local splitting of real connective K-theory, into the
eigensummands of the cohomology of the suspended stunted projective
spectrum; its cokernel and kernel reduce to annihilator-ideal quotients
computed in `steenrod`.

Only graded dimensions and structural annotations are produced; the full
module structure of the total is determined only up to extension and is
deliberately not assembled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import OddPrime, ensure_regular
from .errors import InconsistencyError, PreconditionError
from .steenrod import quotient_module_dims

SIGMA_C_PIECE = "H(sigma c)"
HP_PIECE = "H(sigma HP)"
COKER_MAIN_PIECE = "sigma^-2 C/A(b,Q1)"


def _cp_piece_name(a: int) -> str:
    return f"H(sigma CP[{a}])/A(sigma y^{a})"


def _ker_piece_name(a: int) -> str:
    return f"sigma^{2 * a} C_{a}/A(b,Q1)"


def _shift(dims: dict[int, int], offset: int) -> dict[int, int]:
    out = {}
    for d in sorted(dims):
        shifted = d + offset
        if shifted < 0:
            raise InconsistencyError(
                f"graded piece reaches negative degree {shifted} after shift"
            )
        out[shifted] = dims[d]
    return out


def _add(*parts: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in parts:
        for d, v in part.items():
            out[d] = out.get(d, 0) + v
    return {d: out[d] for d in sorted(out)}


def _truncate(dims: dict[int, int], max_degree: int) -> dict[int, int]:
    return {d: v for d, v in dims.items() if d <= max_degree}


def h_sigma_c_dims(p: OddPrime, max_degree: int) -> dict[int, int]:
    """Dims of the cohomology of the suspended cokernel-of-J spectrum:
    an extension of a shifted copy of A//A_1 by I(A)/A(b,P1), so the
    dimensions add."""
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    sub = quotient_module_dims(p, "I(A)/A(b,P1)", max_degree)
    shift = p.p * p.q - 1
    quo: dict[int, int] = {}
    if max_degree >= shift:
        quo = _shift(quotient_module_dims(p, "A//A1", max_degree - shift), shift)
    return _add(sub, quo)


def h_sigma_hp_dims(p: OddPrime, max_degree: int) -> dict[int, int]:
    """One class in each degree 4m+1, m >= 1: the suspension of the
    polynomial classes of the quaternionic projective space."""
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    return {d: 1 for d in range(5, max_degree + 1, 4)}


def _odd_summand_indices(p: OddPrime) -> list[int]:
    """The odd a with 1 <= a <= p-4 (empty for p = 3)."""
    return list(range(1, p.p - 3, 2))


def delta_star_report(p: OddPrime, max_degree: int) -> dict:
    """Named graded dimensions of cok(delta*) and of the shifted kernel
    block sigma^-1 ker(delta*), each as {piece name: {degree: dim}}."""
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    coker: dict[str, dict[int, int]] = {
        COKER_MAIN_PIECE: _truncate(
            _shift(quotient_module_dims(p, "C/A(b,Q1)", max_degree + 2), -2),
            max_degree,
        )
    }
    ker: dict[str, dict[int, int]] = {}
    for a in _odd_summand_indices(p):
        cp_dims: dict[int, int] = {}
        if max_degree >= 1:
            cp_dims = _shift(
                quotient_module_dims(p, "CP[a]/A(y^a)", max_degree - 1, a=a), 1
            )
        coker[_cp_piece_name(a)] = cp_dims
        shift = 2 * a
        dims: dict[int, int] = {}
        if max_degree >= shift:
            dims = _shift(
                quotient_module_dims(p, "C_a/A(b,Q1)", max_degree - shift, a=a),
                shift,
            )
        ker[_ker_piece_name(a)] = dims
    return {"coker": coker, "ker": ker}


def delta_star_rank_data(p: OddPrime, max_degree: int) -> dict:
    """Source and target dims of delta* itself, for consistency checks:
    in every degree, cok - ker = target - source, and below 2p-2 the map
    is injective so cok = target - source there."""
    source: dict[str, dict[int, int]] = {}
    for i in range(1, (p.p - 1) // 2 + 1):
        shift = 4 * i - 1
        dims: dict[int, int] = {}
        if max_degree >= shift:
            dims = _shift(
                quotient_module_dims(p, "A//E1", max_degree - shift), shift
            )
        source[f"sigma^{shift} A//E1"] = dims
    target: dict[str, dict[int, int]] = {
        "sigma^-2 C/A(b)": _truncate(
            _shift(quotient_module_dims(p, "C/A(b)", max_degree + 2), -2),
            max_degree,
        )
    }
    for a in _odd_summand_indices(p):
        target[f"H(sigma CP[{a}])"] = {
            2 * k + 1: 1
            for k in range(a, (max_degree - 1) // 2 + 1, p.p - 1)
        }
    return {"source": source, "target": target}


@dataclass(frozen=True)
class CohomologyReport:
    p: int
    max_degree: int
    assumptions: tuple[str, ...]
    pieces: dict[str, dict[int, int]]
    total: dict[int, int]
    annotations: tuple[str, ...]


def h_wh_report(
    p: OddPrime, max_degree: int, *, assume_regular: bool = False
) -> CohomologyReport:
    """Full graded-dimension report; total(d) is the sum of the pieces,
    since the assembling extensions preserve dimension."""
    assumptions = ensure_regular(p, assume_regular)
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    pieces: dict[str, dict[int, int]] = {
        SIGMA_C_PIECE: h_sigma_c_dims(p, max_degree),
        HP_PIECE: h_sigma_hp_dims(p, max_degree),
    }
    delta = delta_star_report(p, max_degree)
    pieces.update(delta["coker"])
    pieces.update(delta["ker"])
    total = _add(*pieces.values())
    annotations = [
        f"degrees below {p.q - 1} have no independent cross-check; "
        f"values there are engine-derived",
    ]
    if p.p == 3:
        annotations.append(
            "all pieces are direct summands: the assembling extension is "
            "trivial at p=3"
        )
    else:
        annotations.append(
            "the extension gluing the kernel block onto the "
            "stunted-projective block is nontrivial"
        )
        annotations.append(
            f"a nontrivial mod-p Bockstein relates sigma^2 P2, the bottom "
            f"of the kernel block, to sigma y^{2 * p.p - 1} in the "
            f"stunted-projective block"
        )
    return CohomologyReport(
        p.p, max_degree, assumptions, pieces, total, tuple(annotations)
    )


def report_payload(report: CohomologyReport) -> dict:
    """JSON-ready projection with deterministic ordering; degree keys are
    decimal strings in ascending numeric order."""
    return {
        "kind": "cohomology-report",
        "p": report.p,
        "max_degree": report.max_degree,
        "assumptions": list(report.assumptions),
        "pieces": {
            name: {str(d): dims[d] for d in sorted(dims)}
            for name, dims in report.pieces.items()
        },
        "total": {str(d): report.total[d] for d in sorted(report.total)},
        "annotations": list(report.annotations),
    }
