"""File formats: groups, chains, cochains, and certificates.

Everything is JSON with rationals rendered as decimal-free "p/q"
strings.  Element encoding is per backend: finite elements by name,
permutations as comma-separated image strings, free-group words as
"x1*x2^-1" (or "e"), product and semidirect elements as nested arrays.
Certificates embed a full group record so they re-verify standalone.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import l1opt, mitosis
from .barcomplex import Chain, Cochain
from .groups import (DirectProduct, FiniteTableGroup, FreeGroup, FreeProduct,
                     GroupAxiomError, Homomorphism, PermutationGroup,
                     SemidirectProduct, build_group, group_to_spec)


class FileFormatError(ValueError):
    """A file or record does not match the expected schema."""


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise FileFormatError("expected a rational, got %r" % (s,))
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FileFormatError("bad rational %r: %s" % (s, exc)) from None
    raise FileFormatError("expected a rational 'p/q' string, got %r" % (s,))


def format_fraction(fr) -> str:
    fr = Fraction(fr)
    if fr.denominator == 1:
        return str(fr.numerator)
    return "%d/%d" % (fr.numerator, fr.denominator)


_WORD_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def encode_element(G, a):
    G.check_member(a)
    if isinstance(G, FiniteTableGroup):
        return G.names[G.element_index(a)]
    if isinstance(G, PermutationGroup):
        return ",".join(str(i) for i in a)
    if isinstance(G, FreeGroup):
        if not a:
            return "e"
        return "*".join("x%d" % v if v > 0 else "x%d^-1" % -v for v in a)
    if isinstance(G, DirectProduct):
        return [encode_element(f, x) for f, x in zip(G.factors, a)]
    if isinstance(G, FreeProduct):
        return [[k, encode_element(G.factors[k], x)] for k, x in a]
    if isinstance(G, SemidirectProduct):
        return [encode_element(G.base, a[0]),
                ",".join(str(i) for i in a[1])]
    raise FileFormatError("no element encoding for %r" % (G,))


def decode_element(G, obj):
    try:
        a = _decode_element(G, obj)
    except FileFormatError:
        raise
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise FileFormatError("bad element %r: %s" % (obj, exc)) from None
    G.check_member(a)
    return a


def _decode_element(G, obj):
    if isinstance(G, FiniteTableGroup):
        try:
            return G.names.index(obj)
        except ValueError:
            raise FileFormatError("unknown element name %r" % (obj,)) from None
    if isinstance(G, PermutationGroup):
        return tuple(int(t) for t in str(obj).split(","))
    if isinstance(G, FreeGroup):
        s = str(obj).strip()
        w = G.identity()
        if s in ("e", ""):
            return w
        for token in s.split("*"):
            m = _WORD_TOKEN.match(token.strip())
            if not m:
                raise FileFormatError("bad word token %r" % token)
            i = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) else 1
            if not 1 <= i <= G.rank:
                raise FileFormatError("letter x%d outside rank %d" % (i, G.rank))
            step = (i,) if exp > 0 else (-i,)
            for _ in range(abs(exp)):
                w = G.mul(w, step)
        return w
    if isinstance(G, DirectProduct):
        if len(obj) != len(G.factors):
            raise FileFormatError("product element arity mismatch")
        return tuple(_decode_element(f, x) for f, x in zip(G.factors, obj))
    if isinstance(G, FreeProduct):
        out = G.identity()
        for k, enc in obj:
            k = int(k)
            x = _decode_element(G.factors[k], enc)
            f = G.factors[k]
            if f.eq(x, f.identity()):
                continue
            out = G.mul(out, ((k, x),))
        return out
    if isinstance(G, SemidirectProduct):
        base = _decode_element(G.base, obj[0])
        act = tuple(int(t) for t in str(obj[1]).split(","))
        return (base, act)
    raise FileFormatError("no element decoding for %r" % (G,))


def chain_to_records(c: Chain) -> list:
    return [{"coeff": format_fraction(r),
             "tuple": [encode_element(c.group, g) for g in t]}
            for t, r in c.terms()]


def chain_from_records(G, degree, records) -> Chain:
    coeffs = []
    for rec in records:
        if not isinstance(rec, dict) or "coeff" not in rec or "tuple" not in rec:
            raise FileFormatError(
                "chain record must be {'coeff': 'p/q', 'tuple': [...]}")
        tup = tuple(decode_element(G, x) for x in rec["tuple"])
        if len(tup) != degree:
            raise FileFormatError(
                "tuple %r has length %d, expected %d"
                % (rec["tuple"], len(tup), degree))
        coeffs.append((tup, parse_fraction(rec["coeff"])))
    return Chain(G, degree, coeffs)


def chain_to_dict(c: Chain) -> dict:
    return {"degree": c.degree, "terms": chain_to_records(c)}


def chain_from_dict(G, d) -> Chain:
    if not isinstance(d, dict) or "degree" not in d:
        raise FileFormatError("chain file needs a 'degree' field")
    degree = int(d["degree"])
    return chain_from_records(G, degree, d.get("terms", []))


def cochain_from_dict(G, d) -> Cochain:
    if not isinstance(d, dict) or "degree" not in d:
        raise FileFormatError("cochain file needs a 'degree' field")
    degree = int(d["degree"])
    table = {}
    for rec in d.get("terms", []):
        tup = tuple(decode_element(G, x) for x in rec["tuple"])
        if len(tup) != degree:
            raise FileFormatError("cochain tuple of length %d, expected %d"
                                  % (len(tup), degree))
        table[tup] = parse_fraction(rec["coeff"])
    return Cochain(G, degree, table=table, name=d.get("name", "f"))


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FileFormatError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise FileFormatError("%s is not valid JSON: %s" % (path, exc)) from None


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def load_group(path):
    spec = load_json(path)
    try:
        return build_group(spec)
    except GroupAxiomError:
        raise
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise FileFormatError("bad group record in %s: %s" % (path, exc)) from None


def load_chain(path, G) -> Chain:
    return chain_from_dict(G, load_json(path))


# certificate records


def fill_cert_to_dict(cert: l1opt.FillCertificate) -> dict:
    G = cert.z.group
    return {"kind": "fill",
            "group": group_to_spec(G),
            "degree": cert.z.degree,
            "z": chain_to_records(cert.z),
            "c": chain_to_records(cert.c),
            "ratio": format_fraction(cert.ratio),
            "support": cert.support,
            "method": cert.method}


def fill_cert_from_dict(d) -> l1opt.FillCertificate:
    G = build_group(d["group"])
    degree = int(d["degree"])
    z = chain_from_records(G, degree, d["z"])
    c = chain_from_records(G, degree + 1, d["c"])
    return l1opt.FillCertificate(z, c, parse_fraction(d["ratio"]),
                                 d.get("support", {}),
                                 d.get("method", "simplex-bland"))


def kappa_to_dict(res: l1opt.UbcConstant, G) -> dict:
    return {"kind": "kappa",
            "group": group_to_spec(G),
            "degree": res.degree,
            "kappa": None if res.kappa is None else format_fraction(res.kappa),
            "lower": format_fraction(res.lower),
            "upper": None if res.upper is None else format_fraction(res.upper),
            "method": res.method,
            "strategy": res.strategy,
            "vertices": [fill_cert_to_dict(c) for c in res.certificates]}


def pipeline_cert_to_dict(cert: mitosis.PipelineCertificate) -> dict:
    return {"kind": "pipeline",
            "source_group": group_to_spec(cert.z.group),
            "ambient_group": group_to_spec(cert.primitive.group),
            "degree": cert.degree,
            "z": chain_to_records(cert.z),
            "target": chain_to_records(cert.target),
            "primitive": chain_to_records(cert.primitive),
            "ratio": format_fraction(cert.ratio),
            "kappa": format_fraction(cert.kappa),
            "xi": format_fraction(cert.xi_ratio),
            "bound": format_fraction(cert.bound)}


def pipeline_cert_from_dict(d) -> mitosis.PipelineCertificate:
    H = build_group(d["source_group"])
    M = build_group(d["ambient_group"])
    q = int(d["degree"])
    return mitosis.PipelineCertificate(
        z=chain_from_records(H, q, d["z"]),
        target=chain_from_records(M, q, d["target"]),
        primitive=chain_from_records(M, q + 1, d["primitive"]),
        degree=q,
        ratio=parse_fraction(d["ratio"]),
        kappa=parse_fraction(d["kappa"]),
        xi_ratio=parse_fraction(d["xi"]),
        bound=parse_fraction(d["bound"]))


def tower_to_dict(rows) -> dict:
    out = []
    for r in rows:
        rec = {"degree": r.degree, "size": r.size,
               "kappa": format_fraction(r.kappa)}
        if r.degree > 0:
            rec.update({"theta": r.theta_bound, "aw": r.aw_bound,
                        "shuffle": r.shuffle_bound,
                        "e_input": format_fraction(r.e_input),
                        "xi": format_fraction(r.xi)})
        out.append(rec)
    return {"kind": "tower", "rows": out}


def mitosis_to_dict(data: mitosis.MitosisData) -> dict:
    G, M = data.source, data.ambient
    if not G.is_finite():
        raise FileFormatError("only finite-source mitosis data serializes")
    return {"kind": "mitosis",
            "source": group_to_spec(G),
            "ambient": group_to_spec(M),
            "injection": [[encode_element(G, g), encode_element(M, data.inj(g))]
                          for g in G.elements()],
            "s": encode_element(M, data.s),
            "d": encode_element(M, data.d)}


def mitosis_from_dict(d) -> mitosis.MitosisData:
    G = build_group(d["source"])
    M = build_group(d["ambient"])
    table = {}
    for src, img in d["injection"]:
        g = decode_element(G, src)
        table[G.canonical_key(g)] = decode_element(M, img)
    if len(table) != G.order():
        raise FileFormatError("injection table does not cover the source group")

    def fn(g, _t=table, _G=G):
        return _t[_G.canonical_key(g)]

    inj = Homomorphism(G, M, fn, name="inj")
    return mitosis.MitosisData(G, M, inj,
                               decode_element(M, d["s"]),
                               decode_element(M, d["d"]))


def certificate_to_dict(obj) -> dict:
    if isinstance(obj, l1opt.FillCertificate):
        return fill_cert_to_dict(obj)
    if isinstance(obj, mitosis.PipelineCertificate):
        return pipeline_cert_to_dict(obj)
    if isinstance(obj, mitosis.MitosisData):
        return mitosis_to_dict(obj)
    raise FileFormatError("no serialization for %r" % (obj,))


def verify_certificate_dict(d) -> list[str]:
    """Independent re-check of any certificate record.  Uses chain
    arithmetic and group oracles only; no LP is run.  Returns the list
    of failed checks (empty means the certificate verifies)."""
    if not isinstance(d, dict) or "kind" not in d:
        raise FileFormatError("certificate must be an object with a 'kind'")
    kind = d["kind"]
    if kind == "fill":
        return fill_cert_from_dict(d).verify()
    if kind == "pipeline":
        return pipeline_cert_from_dict(d).verify()
    if kind == "kappa":
        failures = []
        ratios = []
        for i, sub in enumerate(d.get("vertices", [])):
            subfail = fill_cert_from_dict(sub).verify()
            failures.extend("vertex %d: %s" % (i, f) for f in subfail)
            ratios.append(parse_fraction(sub["ratio"]))
        lower = parse_fraction(d["lower"])
        upper = None if d.get("upper") is None else parse_fraction(d["upper"])
        kappa = None if d.get("kappa") is None else parse_fraction(d["kappa"])
        best = max(ratios) if ratios else Fraction(0)
        if best != lower:
            failures.append("stated lower bound is not the best stored ratio")
        if upper is not None and lower > upper:
            failures.append("lower bound exceeds upper bound")
        if kappa is not None:
            if d.get("method") != "vertex-enumeration":
                failures.append("exact kappa stated for a non-exact method")
            elif kappa != lower:
                failures.append("exact kappa does not match its witness ratio")
        return failures
    if kind == "tower":
        rows = d.get("rows", [])
        failures = []
        if not rows or rows[0].get("degree") != 0:
            return ["tower must start at degree 0"]
        if parse_fraction(rows[0]["kappa"]) != 0 or int(rows[0]["size"]) != 1:
            failures.append("base row must have kappa = 0 and size 1")
        xis = [Fraction(0)] + [parse_fraction(r.get("xi", 0)) for r in rows[1:]]
        expect = mitosis.tower(len(rows) - 1, xi=xis)
        for r, ex in zip(rows, expect):
            if int(r["size"]) != ex.size:
                failures.append("size recursion fails at degree %d" % ex.degree)
            if parse_fraction(r["kappa"]) != ex.kappa:
                failures.append("kappa recursion fails at degree %d" % ex.degree)
        return failures
    if kind == "mitosis":
        report = mitosis.verify_mitosis(mitosis_from_dict(d))
        return ["axiom failed: %s" % a for a in report.failed_axioms()]
    raise FileFormatError("unknown certificate kind %r" % (kind,))


def verify_certificate(path) -> list[str]:
    return verify_certificate_dict(load_json(path))
