"""Tables, verification diagnostics and their text/CSV/JSON renderings."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from miyawaki import __version__, assemble, published
from miyawaki.exact import PiExact, factor_rational
from miyawaki.holproj import Method, ProjectionContext, a_coefficients, c_coefficients, k_coefficients
from miyawaki.level2 import form_basis, newforms

TABLE_NAMES = ("main", "sym2", "product", "coeffs-c", "coeffs-a", "coeffs-k")
COEFF_LABELS = {
    "coeffs-c": ("C'0", "C''0", "C1", "C2", "C3", "C4"),
    "coeffs-a": ("A1", "A2", "A3", "A4"),
    "coeffs-k": ("K1", "K2", "K3", "K4"),
}
DEFAULT_METHOD = {
    "main": Method.PUBLISHED,
    "sym2": Method.PUBLISHED,
    "product": Method.PUBLISHED,
    "coeffs-c": Method.PUBLISHED,
    "coeffs-a": Method.PUBLISHED,
    "coeffs-k": Method.PUBLISHED,
}


# ---------------------------------------------------------------------------
# serialization helpers


def _pi_power(v: PiExact):
    p = v.pi_power
    return int(p) if p.denominator == 1 else float(p)


def exact_json(v: PiExact) -> dict:
    factored = [] if v.is_zero() else [[p, e] for p, e in factor_rational(v.coeff).factors]
    sign = 1 if v.coeff >= 0 else -1
    return {
        "rational": {"num": str(v.coeff.numerator), "den": str(v.coeff.denominator)},
        "sign": sign,
        "factored": factored,
        "factored_text": render_rational(v.coeff),
        "pi_power": _pi_power(v),
    }


def render_rational(q: Fraction) -> str:
    return "0" if q == 0 else factor_rational(q).render()


def _numeric_str(x) -> str | None:
    return None if x is None else mpmath.nstr(mpmath.mpf(x), 12)


# ---------------------------------------------------------------------------
# tables


@dataclass
class Table:
    name: str
    method: str
    columns: tuple[str, ...]
    rows: list[dict]


def _fe_violations(name: str, method: Method) -> set[int]:
    """Points whose functional-equation partner certificate fails."""
    if name == "sym2":
        return set()
    _, pair, main = assemble.value_tables(method.value)
    certs = assemble.standard_fe_check(main) if name == "main" else assemble.g20_fe_pair_check(pair)
    return {s for c in certs if not c.holds for s in c.pair}


def _critical_table(name: str, rows: list[assemble.CriticalRow], method: Method) -> Table:
    out = []
    bad = _fe_violations(name, method)
    for r in rows:
        d = {"s": r.s}
        d.update(exact_json(r.exact))
        d["numeric"] = r.numeric
        d["flags"] = list(r.flags) + (["fe-pair-violated"] if r.s in bad else [])
        out.append(d)
    return Table(name, method.value, ("s", "R_s", "pi", "numeric", "flags"), out)


def _coeff_table(name: str, method: Method) -> Table:
    labels = COEFF_LABELS[name]
    rows = []
    for s in assemble.CRITICAL_POINTS:
        ctx = ProjectionContext(s)
        if name == "coeffs-c":
            values = c_coefficients(ctx, method).as_row()
            printed = published.c_row(s)
        elif name == "coeffs-a":
            values = a_coefficients(ctx, method)
            printed = published.a_row(s)
        else:
            values = k_coefficients(ctx, method)
            printed = published.k_row(s) + (None, None)
        entries = []
        for label, v, p in zip(labels, values, printed):
            e = {"name": label, "rational": {"num": str(v.coeff.numerator), "den": str(v.coeff.denominator)}}
            e["factored"] = [] if v.is_zero() else [[q, x] for q, x in factor_rational(v.coeff).factors]
            if p is not None:
                e["printed_match"] = v == p
            entries.append(e)
        flags = ["matches-print" if all(e.get("printed_match", True) for e in entries) else "differs-from-print"]
        if name == "coeffs-k" and method is Method.CORRECTED and ctx.is_holomorphic_edge:
            flags.append("eisenstein-part-removed")
        rows.append({"s": s, "values": entries, "pi_power": 2 * s, "flags": flags})
    return Table(name, method.value, ("s",) + labels + ("pi", "flags"), rows)


def build_table(name: str, method: Method | str | None = None, with_numeric: bool = True) -> Table:
    if name not in TABLE_NAMES:
        raise KeyError(name)
    method = Method.parse(method) if method is not None else DEFAULT_METHOD[name]
    if name == "main":
        return _critical_table(name, assemble.main_table(method, with_numeric), method)
    if name == "sym2":
        return _critical_table(name, assemble.sym2_table(with_numeric), method)
    if name == "product":
        return _critical_table(name, assemble.product_table(method, with_numeric), method)
    return _coeff_table(name, method)


def _fmt_rational(d: dict) -> str:
    num, den = int(d["num"]), int(d["den"])
    return render_rational(Fraction(num, den))


def render_text(table: Table) -> str:
    lines = [f"# {table.name} (method: {table.method})"]
    if table.name.startswith("coeffs"):
        header = ["s"] + list(table.columns[1:-2]) + ["pi", "flags"]
        lines.append(" | ".join(header))
        for r in table.rows:
            vals = [str(Fraction(int(e["rational"]["num"]), int(e["rational"]["den"]))) for e in r["values"]]
            lines.append(" | ".join([f"{r['s']:>3}"] + vals + [f"pi^{r['pi_power']}", ",".join(r["flags"])]))
        return "\n".join(lines) + "\n"
    lines.append("  s | R_s | pi^a | numerical value | flags")
    for r in table.rows:
        numeric = _numeric_str(r["numeric"]) or "-"
        rs = _fmt_rational(r["rational"])
        lines.append(f"{r['s']:>3} | {rs} | pi^{r['pi_power']} | {numeric} | {','.join(r['flags'])}")
    return "\n".join(lines) + "\n"


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if table.name.startswith("coeffs"):
        labels = list(table.columns[1:-2])
        w.writerow(["s"] + [f"{x}_num" for x in labels] + [f"{x}_den" for x in labels] + ["pi_power", "flags"])
        for r in table.rows:
            nums = [e["rational"]["num"] for e in r["values"]]
            dens = [e["rational"]["den"] for e in r["values"]]
            w.writerow([r["s"]] + nums + dens + [r["pi_power"], ";".join(r["flags"])])
        return buf.getvalue()
    w.writerow(["s", "num", "den", "factored", "pi_power", "numeric", "flags"])
    for r in table.rows:
        w.writerow(
            [
                r["s"],
                r["rational"]["num"],
                r["rational"]["den"],
                _fmt_rational(r["rational"]),
                r["pi_power"],
                "" if r["numeric"] is None else repr(r["numeric"]),
                ";".join(r["flags"]),
            ]
        )
    return buf.getvalue()


def render_json(table: Table) -> str:
    doc = {"table": table.name, "method": table.method, "rows": table.rows}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


RENDERERS: dict[str, Callable[[Table], str]] = {"text": render_text, "csv": render_csv, "json": render_json}


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Diagnostic:
    name: str
    expected: str
    actual: str
    verdict: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "verdict": "pass" if self.verdict else "fail"}


def _exact_diag(name: str, expected, actual) -> Diagnostic:
    return Diagnostic(name, str(expected), str(actual), expected == actual)


def _rel_diag(name: str, expected: float, actual: float, tol: float) -> Diagnostic:
    rel = abs(actual - expected) / abs(expected)
    return Diagnostic(name, repr(expected), f"{actual!r} (rel diff {rel:.3g}, tol {tol:g})", rel <= tol)


def verify_coeffs(name: str, method: Method) -> list[Diagnostic]:
    out = []
    for s in assemble.CRITICAL_POINTS:
        ctx = ProjectionContext(s)
        if name == "coeffs-c":
            got, want = c_coefficients(ctx, method).as_row(), published.c_row(s)
        elif name == "coeffs-a":
            got, want = a_coefficients(ctx, method), published.a_row(s)
        else:
            got, want = k_coefficients(ctx, method)[:2], published.k_row(s)
        for label, g, w in zip(COEFF_LABELS[name], got, want):
            out.append(_exact_diag(f"{name} s={s} {label}", w, g))
    if name == "coeffs-k":
        inv = form_basis().inverse_matrix
        for j, (nums, den) in enumerate(published.K_INVERSE_ROWS):
            want = tuple(Fraction(n, den) for n in nums)
            out.append(_exact_diag(f"coeffs-k inverse row K{j + 1}", want, tuple(inv[j])))
    return out


def verify_newforms() -> list[Diagnostic]:
    h1, h2 = newforms()
    out = []
    for label, f, want in (("h1", h1, published.NEWFORM_H1), ("h2", h2, published.NEWFORM_H2)):
        got = tuple(int(f[n]) for n in range(1, 6))
        out.append(_exact_diag(f"newform {label} a(1..5)", want, got))
    return out


def verify_g20_listing() -> list[Diagnostic]:
    check = assemble.g20_listing_check()
    return [
        _exact_diag(f"g20 listing {name} a(1..5)", tuple(v), check.computed)
        for name, v in check.listings.items()
    ]


def verify_sym2() -> list[Diagnostic]:
    out = [
        _exact_diag(f"sym2 s={s}", published.sym2_value(s), assemble.sym_square_value(s))
        for s in assemble.CRITICAL_POINTS
    ]
    for c in assemble.sym_square_fe_pair_check({s: assemble.sym_square_value(s) for s in assemble.CRITICAL_POINTS}):
        out.append(Diagnostic(f"sym2 D* pair {c.pair}", "1", str(c.ratio), c.holds))
    return out


def verify_product(method: Method) -> list[Diagnostic]:
    return [
        _exact_diag(f"product s={s}", published.g20_pair_value(s), assemble.g20_pair_value(s, method))
        for s in assemble.CRITICAL_POINTS
    ]


def verify_main(method: Method, tolerance: float) -> list[Diagnostic]:
    out = []
    for row in assemble.main_table(method):
        out.append(_exact_diag(f"main s={row.s} exact", published.main_value(row.s), row.exact))
        out.append(_rel_diag(f"main s={row.s} numeric column", published.main_numeric(row.s), row.numeric, tolerance))
    return out


NORM_DIGITS = 12


def verify_norms() -> list[Diagnostic]:
    from miyawaki.numeric import peterson_norm

    tol = 0.5 * 10.0 ** (1 - NORM_DIGITS)
    out = [_rel_diag("norm <Delta,Delta>", float(published.DELTA_NORM), float(peterson_norm(12, 8).value), tol)]
    with mpmath.workdps(40):
        for l, printed in published.G20_NORMS.items():
            got = peterson_norm(20, l).value
            rel = abs(got / mpmath.mpf(printed) - 1)
            out.append(
                Diagnostic(f"norm <g20,g20> l={l}", printed, f"{mpmath.nstr(got, 25)} (rel diff {mpmath.nstr(rel, 3)})", rel <= tol)
            )
    return out


def verify_theta(threads: int | None = None) -> list[Diagnostic]:
    from miyawaki.theta import GramTarget, fourier_coefficient

    targets = published.theta_targets()
    raws = [fourier_coefficient(GramTarget(g), threads).raw for g, _ in targets]
    return [
        _exact_diag(f"theta {g}", Fraction(c), raw / raws[0]) for (g, c), raw in zip(targets, raws)
    ]


VERIFY_TABLES = ("coeffs-c", "coeffs-a", "coeffs-k", "newforms", "g20-listing", "sym2", "product", "main", "norms", "theta")
VERIFY_ALL = tuple(t for t in VERIFY_TABLES if t != "theta")


def run_verification(table: str, method: Method | None, tolerance: float, threads: int | None = None) -> list[Diagnostic]:
    m = method or DEFAULT_METHOD.get(table, Method.CORRECTED)
    if table in COEFF_LABELS:
        return verify_coeffs(table, m)
    if table == "newforms":
        return verify_newforms()
    if table == "g20-listing":
        return verify_g20_listing()
    if table == "sym2":
        return verify_sym2()
    if table == "product":
        return verify_product(m)
    if table == "main":
        return verify_main(m, tolerance)
    if table == "norms":
        return verify_norms()
    if table == "theta":
        return verify_theta(threads)
    raise KeyError(table)


# ---------------------------------------------------------------------------
# FE diagnostics


def fe_document(sources=("printed", "corrected")) -> dict:
    doc = {}
    for src in sources:
        rep = assemble.fe_report(src)
        doc[src] = {
            "sym2": [_cert_json(c) for c in rep.sym2],
            "g20_pair": [_cert_json(c) for c in rep.g20],
            "standard": [_cert_json(c) for c in rep.standard],
            "signs": [
                {"s": x.s, "sign": x.value_sign, "expected": x.expected_sign, "reason": x.reason, "consistent": x.consistent}
                for x in rep.signs
            ],
        }
    return doc


def _cert_json(c: assemble.FeCertificate) -> dict:
    return {
        "pair": list(c.pair),
        "ratio": {"num": str(c.ratio.coeff.numerator), "den": str(c.ratio.coeff.denominator)},
        "ratio_factored": c.ratio_factored,
        "ratio_pi_power": _pi_power(c.ratio),
        "pi_balanced": c.pi_balanced,
        "holds": c.holds,
    }


def render_fe_text(doc: dict) -> str:
    lines = []
    for src, parts in doc.items():
        lines.append(f"# functional-equation certificates ({src} values)")
        for kind in ("sym2", "g20_pair", "standard"):
            for c in parts[kind]:
                verdict = "ok" if c["holds"] else "VIOLATED"
                bal = "balanced" if c["pi_balanced"] else f"pi^{c['ratio_pi_power']}"
                lines.append(f"{kind:>9} {tuple(c['pair'])}: ratio {c['ratio_factored']} [{bal}] {verdict}")
        bad = [x for x in parts["signs"] if not x["consistent"]]
        if bad:
            for x in bad:
                lines.append(f"     sign s={x['s']}: value sign {x['sign']}, expected {x['expected']} ({x['reason']})")
        else:
            lines.append("     sign scan: consistent")
    return "\n".join(lines) + "\n"


@dataclass
class ReportDocument:
    tables: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {"tables": self.tables, "diagnostics": self.diagnostics, "metadata": self.metadata},
            indent=2,
            sort_keys=True,
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        return cls(d["tables"], d["diagnostics"], d["metadata"])


def metadata(timings: dict | None = None) -> dict:
    from miyawaki.numeric import DEFAULT_DPS
    from miyawaki.qexp import DEFAULT_PRECISION

    meta = {"version": __version__, "qexp_precision": DEFAULT_PRECISION, "numeric_dps": DEFAULT_DPS}
    if timings:
        meta["runtimes"] = timings
    return meta


class Stopwatch:
    def __init__(self):
        self.times: dict[str, float] = {}

    def run(self, label: str, fn, *args, **kwargs):
        t = time.monotonic()
        out = fn(*args, **kwargs)
        self.times[label] = round(time.monotonic() - t, 3)
        return out
