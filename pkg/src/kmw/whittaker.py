"""Evaluation of the spherical-function formula at a dominant coweight: the
alternating twisted Weyl sum with the delta and correction factors, the
per-element pieces from the operator tables, the two-route crosscheck, and
exact numeric specialization.
"""

import json

from . import cartan, dl as dl_mod, localfield, symmetrizer as sym
from .cg import StarContext
from .coeff import Coeff
from .series import LatticeSeries, top_bound


class WhittakerError(ArithmeticError):
    pass


class WhittakerValue:
    """Coefficient tables for one dominant coweight.

    formal: map coweight -> ring coefficient (with the v^{<lam, rho>}
    prefactor included); specialized: map coweight -> exact cyclotomic,
    present when a residue size q was supplied.
    """

    def __init__(self, lam, formal, specialized, meta):
        self.lam = lam
        self.formal = formal
        self.specialized = specialized
        self.meta = meta

    def to_json(self):
        out = {
            "lambda": list(self.lam),
            "meta": self.meta,
            "formal": {",".join(map(str, k)): c.render()
                       for k, c in sorted(self.formal.items())},
        }
        if self.specialized is not None:
            out["specialized"] = {
                ",".join(map(str, k)): {"exact": repr(z),
                                        "complex": [z.to_complex().real,
                                                    z.to_complex().imag]}
                for k, z in sorted(self.specialized.items())}
        return out


def _check_polynomiality(series_terms, n):
    for vec, c in series_terms.items():
        if not c.is_v_polynomial():
            raise WhittakerError(
                "coefficient with negative v-power at %r" % (vec,))


def cs_formula(met, lam, floor, cap, q=None, stabilize=True):
    """The alternating-sum route: prefactor * correction factor * delta *
    signed twisted Weyl sum, evaluated on e^{lam} down to `floor`.

    Returns a WhittakerValue; when q is given the table is also specialized
    exactly at v = 1/q with the symbol values for (q, n).
    """
    lam = tuple(lam)
    datum = met.base
    if not datum.is_dominant(lam):
        raise WhittakerError("coweight is not dominant")
    kind = met.tilde_classification.kind
    value, stab = sym.stabilized(sym.simple_symmetrizer, met, sym.I_FLAT_FLAVOR,
                                 lam, floor, cap)
    if stabilize and not stab:
        raise WhittakerError("sum not stabilized at cap %d; raise the cap" % cap)
    if kind == cartan.FINITE:
        mf = None
    else:
        mf = sym.correction_factor(met, sym.MACDONALD_CT, floor - top_bound(value))
    out = value if mf is None else (mf * value).truncate(floor)
    rho_pair = datum.height(lam)  # <lam, rho> = sum of coroot coordinates
    prefactor = Coeff.v(met.n, rho_pair)
    table = {vec: c * prefactor for vec, c in out.terms.items()}
    _check_polynomiality({k: c * Coeff.v(met.n, -rho_pair) for k, c in table.items()}, met.n)
    specialized = None
    if q is not None:
        gt = localfield.gauss_table(localfield.FieldModel(q, met.n))
        specialized = {vec: c.specialize(q, gt.values, gt.m)
                       for vec, c in table.items()}
    meta = {"floor": floor, "cap": cap, "stabilized": stab, "route": "alternating-sum"}
    return WhittakerValue(lam, table, specialized, meta)


def iwahori_pieces(met, lam, flavor=dl_mod.WHITTAKER, cap=None, q=None, floor=None):
    """Per-element coefficient tables q^{-<lam, rho>} T_w(e^{lam}).

    Finite type runs over the whole group; otherwise `cap` bounds the length.
    Tables are formal; with q they are specialized exactly.
    """
    lam = tuple(lam)
    datum = met.base
    if not datum.is_dominant(lam):
        raise WhittakerError("coweight is not dominant")
    if datum.classification.kind != cartan.FINITE and cap is None:
        raise WhittakerError("infinite group: pass a length cap")
    ctx = StarContext(met)
    if cap is None:
        cap = len(datum.weyl.enumerate(10 ** 6))  # finite: effectively all
    rho_pair = datum.height(lam)
    prefactor = Coeff.v(met.n, rho_pair)
    exact_ok = flavor == dl_mod.WHITTAKER or met.n == 1
    gt = None
    if q is not None:
        fm = localfield.FieldModel(q, met.n)
        gt = localfield.gauss_table(fm)
    pieces = {}
    for el in datum.weyl.enumerate(cap):
        if exact_ok:
            table = dl_mod.upsilon(met, el, lam, flavor=flavor, mode="exact")
        else:
            if floor is None:
                raise WhittakerError("spherical flavor at n > 1 needs a floor")
            table = dl_mod.upsilon(met, el, lam, flavor=flavor,
                                   mode="truncated", floor=floor)
        formal = {vec: c * prefactor for vec, c in table.items()}
        entry = {"formal": formal}
        if gt is not None:
            entry["specialized"] = {vec: c.specialize(q, gt.values, gt.m)
                                    for vec, c in formal.items()}
        pieces[el.word] = entry
    return pieces


def crosscheck(met, lam, floor, cap, q=None):
    """Compare the operator-sum route against the alternating-sum route,
    formally and (optionally) specialized.  Returns a report dict whose
    'mismatches' must be empty."""
    lam = tuple(lam)
    hecke, stab1 = sym.stabilized(sym.hecke_symmetrizer, met, sym.P_FLAT_FLAVOR,
                                  lam, floor, cap)
    alt = cs_formula(met, lam, floor, cap, q=None, stabilize=False)
    rho_pair = met.base.height(lam)
    prefactor = Coeff.v(met.n, rho_pair)
    hecke_table = {vec: c * prefactor for vec, c in hecke.terms.items()}
    mismatches = []
    keys = set(hecke_table) | set(alt.formal)
    for vec in sorted(keys):
        a = hecke_table.get(vec, Coeff.zero(met.n))
        b = alt.formal.get(vec, Coeff.zero(met.n))
        if a != b:
            mismatches.append({"component": list(vec),
                               "hecke": a.render(), "sum": b.render()})
    specialized_ok = None
    if q is not None and not mismatches:
        gt = localfield.gauss_table(localfield.FieldModel(q, met.n))
        specialized_ok = True
        for vec in keys:
            a = hecke_table.get(vec, Coeff.zero(met.n)).specialize(q, gt.values, gt.m)
            b = alt.formal.get(vec, Coeff.zero(met.n)).specialize(q, gt.values, gt.m)
            if a != b:
                specialized_ok = False
                mismatches.append({"component": list(vec), "stage": "specialized"})
    # support and polynomiality assertions on everything produced
    for vec in keys:
        if not met.base.dominance_leq(vec, lam):
            mismatches.append({"component": list(vec), "stage": "support"})
    return {
        "lambda": list(lam),
        "floor": floor,
        "cap": cap,
        "stabilized": stab1,
        "crosscheck": "pass" if not mismatches else "fail",
        "specialized": specialized_ok,
        "mismatches": mismatches,
    }
