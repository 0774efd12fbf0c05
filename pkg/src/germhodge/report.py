"""Full analysis of one germ as a deterministic JSON-ready report, and the corpus checker."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__, linalg
from .errors import GermError, InvalidGerm, NotQuasiHomogeneous
from .hodge import hodge_data, opposite_filtration_check
from .milnor import MilnorAlgebra, milnor_algebra, multiplication_matrix
from .poly import GREVLEX, LEX, format_monomial, format_polynomial, hessian_determinant, parse_polynomial
from .residue import bezoutian, bezoutian_coefficients, gram_matrix, normalization_record, oracle_error, residue_of
from .signature import calibration, hodge_number_table, positivity_sign, signature_direct, signature_formula
from .weight import (bilinear_relation_check, jacobson_morosov_check, level_form, nilpotent_weight_filtration,
                     primitive_parts)

ORDERS = {"grevlex": GREVLEX, "lex": LEX}
UNAVAILABLE = "unavailable: not quasi-homogeneous"
ORACLE_FLOOR = 1e-12


@dataclass
class GermSpec:
    polynomial: str
    variables: List[str]
    order: str = "grevlex"
    name: str = ""
    command: str = "analyze"
    expected: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "GermSpec":
        return cls(d["polynomial"], list(d["variables"]), d.get("order", "grevlex"),
                   d.get("name", ""), d.get("command", "analyze"), d.get("expected", {}))

    @classmethod
    def load(cls, path: Path) -> "GermSpec":
        spec = cls.from_dict(json.loads(Path(path).read_text()))
        spec.name = spec.name or Path(path).stem
        return spec


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_matrix(M) -> List[List[str]]:
    return [[rat(x) for x in row] for row in M]


def pq_key(pq) -> str:
    return f"{pq[0]},{pq[1]}"


@dataclass
class Report:
    data: Dict[str, Any]
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def findings(self) -> List[str]:
        return self.data.get("findings", [])

    @property
    def error(self) -> Optional[dict]:
        return self.data.get("error")

    def canonical(self) -> str:
        """Deterministic serialization without timings."""
        return json.dumps(self.data, sort_keys=True, indent=2)

    def to_json(self) -> str:
        return json.dumps({**self.data, "timings": self.timings}, sort_keys=True, indent=2)

    @property
    def exit_code(self) -> int:
        if self.error:
            return self.error.get("exit_code", 1)
        return 1 if self.findings else 0


class _Timer:
    def __init__(self):
        self.timings: Dict[str, float] = {}

    def section(self, name):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.timings[name] = round(time.perf_counter() - self.t0, 6)

        return _Ctx()


def _milnor_section(A: MilnorAlgebra) -> dict:
    return {
        "mu": A.mu,
        "basis": [format_monomial(m, A.variables) for m in A.basis],
        "truncation": A.truncation,
        "qh_weights": [rat(w) for w in A.weights.weights] if A.weights else None,
        "qh_note": A.weights.note or None,
    }


def _graded_vanishing(A: MilnorAlgebra, G) -> bool:
    levels = A.levels()
    target = A.n + 1
    return all(not G[a][b] or levels[a] + levels[b] == target
               for a in range(A.mu) for b in range(A.mu))


def analyze(spec: GermSpec, oracle: bool = False, oracle_eps: float = 1e-3) -> Report:
    timer = _Timer()
    data: Dict[str, Any] = {
        "tool": {"name": "germhodge", "version": __version__},
        "germ": {"input": spec.polynomial, "variables": list(spec.variables), "order": spec.order},
    }
    findings: List[str] = []
    try:
        if spec.order not in ORDERS:
            raise InvalidGerm(f"unknown monomial order {spec.order!r}")
        with timer.section("parse"):
            f = parse_polynomial(spec.polynomial, spec.variables)
        data["germ"]["polynomial"] = format_polynomial(f)
        with timer.section("milnor"):
            A = milnor_algebra(f, ORDERS[spec.order])
        data["milnor"] = _milnor_section(A)

        with timer.section("residue"):
            B = bezoutian(f)
            R = gram_matrix(A, B)
            other = bezoutian_coefficients(A, B, first="x")
            hess = residue_of(A, R, hessian_determinant(f))
        G = R.gram
        symmetric = G == linalg.transpose(G)
        data["residue"] = {
            "gram": rat_matrix(G),
            "functional": [rat(x) for x in R.functional],
            "hessian_residue": rat(hess),
            "normalization": normalization_record(A.n),
        }
        data["residue"]["checks"] = checks = {
            "hessian_equals_mu": hess == A.mu,
            "reduction_orders_agree": other == R.bezout_matrix,
            "symmetric": symmetric,
            "bezoutian_diagonal_is_hessian": B.diagonal() == hessian_determinant(f),
        }
        if A.is_qh:
            checks["graded_vanishing"] = _graded_vanishing(A, G)
        findings += [f"residue: {k}" for k, v in checks.items() if not v]

        with timer.section("weight"):
            N = multiplication_matrix(A, f)
            partition = linalg.jordan_partition_nilpotent(N)
            W = nilpotent_weight_filtration(N)
            P = primitive_parts(W, N, G)
            hd = hodge_data(A) if A.is_qh else None
            L = level_form(G, N, P, hd.signs.ctilde if hd else None)
            bl = bilinear_relation_check(L, G, W, P, hd, positivity_sign() if hd else None)
            jm = jacobson_morosov_check(W)
        blocks = {s: partition.count(s) for s in set(partition)}
        wchecks = {
            **jm,
            "lefschetz": P.lefschetz_ok,
            "partition_matches_primitives": all(blocks.get(l + 1, 0) == d for l, d in P.dims().items())
            and sum(P.dims().values()) == len(partition),
            "self_adjoint": linalg.matmul(G, N) == linalg.transpose(linalg.matmul(G, N)),
            "orthogonal": bl.orthogonal,
            "nondegenerate": all(bl.nondegenerate.values()),
            "well_defined": bl.well_defined,
        }
        if hd is not None:
            wchecks["definite"] = bool(bl.definite)
        data["weight"] = {
            "center": W.center,
            "partition": partition,
            "gr_dims": {str(k): v for k, v in sorted(W.gr_dims().items())},
            "primitive_dims": {str(k): v for k, v in P.dims().items()},
            "level_forms": {str(l): rat_matrix(M) for l, M in L.matrices.items()},
            "level_forms_twisted": L.twisted,
            "polarization": {
                "sign": bl.sign,
                "inertia": {str(l): list(v) for l, v in bl.inertia.items()},
                "notes": bl.notes,
            },
            "checks": wchecks,
        }
        findings += [f"weight: {k}" for k, v in wchecks.items() if not v]

        if hd is None:
            for key in ("spectrum", "hodge", "signature"):
                data[key] = UNAVAILABLE
        else:
            with timer.section("hodge"):
                _hodge_sections(A, G, N, P, hd, data, findings)

        if oracle:
            with timer.section("oracle"):
                data["oracle"] = _oracle_section(A, R, oracle_eps, findings)
    except GermError as exc:
        data["error"] = {**exc.to_dict(), "exit_code": exc.exit_code}
    data["findings"] = findings
    return Report(data, timer.timings)


def _hodge_sections(A, G, N, P, hd, data, findings):
    S, H = hd.spectrum, hd.grading
    data["spectrum"] = [
        {"monomial": format_monomial(r.monomial, A.variables), "level": rat(r.level), "beta": rat(r.beta),
         "eigen_residue": rat(r.eigen_residue), "unipotent": r.unipotent, "pq": list(pq),
         "weight": sum(pq), "ctilde": c}
        for r, pq, c in zip(S.rows, H.pq, hd.signs.ctilde)
    ]
    T = hodge_number_table(S, H)
    hchecks = {
        "spectrum_symmetric": S.is_symmetric(),
        "hodge_numbers_symmetric": T.is_symmetric(),
        "opposite_filtration": opposite_filtration_check(H),
    }
    data["hodge"] = {
        "numbers": {"unipotent": {pq_key(k): v for k, v in T.unipotent.items()},
                    "other": {pq_key(k): v for k, v in T.other.items()}},
        "conjugation": {"kappa": list(hd.conjugation.kappa), "coeff_i_power": list(hd.conjugation.coeff_exp)},
        "checks": hchecks,
    }
    findings += [f"hodge: {k}" for k, v in hchecks.items() if not v]
    formula = signature_formula(T, A.n)
    sig = {"sigma_formula": formula, "calibration_sign": calibration().sign}
    try:
        direct = signature_direct(G, N, hd, P)
        sig.update(sigma_direct=direct, agree=direct == formula)
    except GermError as exc:
        sig.update(sigma_direct=None, agree=False, error=exc.to_dict())
    if not sig["agree"]:
        findings.append("signature: agree")
    data["signature"] = sig


def _oracle_section(A, R, eps, findings) -> dict:
    errors = {}
    for scale in (eps, eps / 10):
        try:
            errors[repr(scale)] = oracle_error(A, R, scale)
        except GermError as exc:
            findings.append(f"oracle: {exc.code}")
            return {"eps": eps, "error": exc.to_dict()}
    e1, e2 = errors[repr(eps)], errors[repr(eps / 10)]
    converging = max(e1, e2) <= ORACLE_FLOOR or e2 < e1
    if not converging:
        findings.append("oracle: converging")
    return {"eps": eps, "max_abs_error": {k: float(f"{v:.3e}") for k, v in errors.items()},
            "converging": converging, "floor": ORACLE_FLOOR}


# ------------------------------------------------------------------- views

SECTIONS = {
    "spectrum": ["germ", "milnor", "spectrum", "hodge"],
    "residue-matrix": ["germ", "milnor", "residue"],
    "weight-filtration": ["germ", "milnor", "weight"],
    "signature": ["germ", "signature"],
}


def view(report: Report, command: str) -> Report:
    if command == "analyze" or report.error:
        return report
    keys = SECTIONS[command]
    data = {k: report.data[k] for k in keys if k in report.data}
    if command in ("spectrum", "signature") and report.data.get("spectrum") == UNAVAILABLE:
        exc = NotQuasiHomogeneous(report.data["milnor"].get("qh_note") or "not quasi-homogeneous")
        data["error"] = {**exc.to_dict(), "exit_code": exc.exit_code}
    prefix = {"spectrum": ("hodge",), "residue-matrix": ("residue",),
              "weight-filtration": ("weight",), "signature": ("signature",)}[command]
    data["findings"] = [x for x in report.findings if x.startswith(prefix)]
    return Report(data, report.timings)


def render_text(data: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(data)}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ------------------------------------------------------------------- corpus

@dataclass
class CheckResult:
    name: str
    ok: bool
    problems: List[str]


def _expected_problems(spec: GermSpec, report: Report) -> List[str]:
    exp = spec.expected
    problems = []
    if "error" in exp:
        got = report.error["code"] if report.error else None
        if got != exp["error"]:
            problems.append(f"expected error {exp['error']}, got {got}")
        return problems
    if report.error:
        return [f"unexpected error {report.error['code']}: {report.error['message']}"]
    known = set(exp.get("findings", []))
    for f in report.findings:
        if f not in known:
            problems.append(f"invariant failed: {f}")
    for f in known - set(report.findings):
        problems.append(f"expected finding {f!r} no longer occurs")
    for key, path in (("mu", ("milnor", "mu")), ("partition", ("weight", "partition")),
                      ("sigma", ("signature", "sigma_formula"))):
        if key in exp:
            got = report.data
            for p in path:
                got = got.get(p) if isinstance(got, dict) else None
            if got != exp[key]:
                problems.append(f"{key}: expected {exp[key]}, got {got}")
    return problems


def _diff(a: Any, b: Any, path: str = "") -> List[str]:
    if isinstance(a, dict) and isinstance(b, dict):
        out = []
        for k in sorted(set(a) | set(b)):
            out += _diff(a.get(k), b.get(k), f"{path}.{k}" if path else k)
        return out
    return [] if a == b else [f"{path}: golden {json.dumps(a)} != current {json.dumps(b)}"]


def check_one(spec: GermSpec, golden_dir: Path, update: bool = False) -> CheckResult:
    report = view(analyze(spec), spec.command)
    problems = _expected_problems(spec, report)
    golden = golden_dir / f"{spec.name}.json"
    if update:
        golden_dir.mkdir(parents=True, exist_ok=True)
        golden.write_text(report.canonical() + "\n")
    elif golden.exists():
        current = json.loads(report.canonical())
        problems += _diff(json.loads(golden.read_text()), current)
    else:
        problems.append(f"missing golden file {golden.name}")
    return CheckResult(spec.name, not problems, problems)


def default_corpus() -> Path:
    return Path(__file__).parent / "corpus"


def check(corpus_dir: Optional[Path] = None, jobs: int = 1, update: bool = False) -> List[CheckResult]:
    corpus_dir = Path(corpus_dir or default_corpus())
    specs = [GermSpec.load(p) for p in sorted(corpus_dir.glob("*.json"))]
    golden_dir = corpus_dir / "golden"
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(check_one, specs, [golden_dir] * len(specs), [update] * len(specs)))
    return [check_one(s, golden_dir, update) for s in specs]
