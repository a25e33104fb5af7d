"""
JSON codecs for scalars, signatures, germs and certificates

Exact scalars are strings ("num/den", or a list of strings over a field of degree >= 2),
complex scalars are [re, im] pairs.
"""

from typing import Dict, List

from kato.algebra.scalars import ScalarField, make_field
from kato.algebra.series import TruncSeries2
from kato.combinatorics.signature import BranchSignature, Mat2Z, derive_signature
from kato.germs.families import BiratGerm, EnokiGerm, FavreGerm, HopfGerm, IHGerm
from kato.normalform.conjugator import ConjugacyCertificate, PhiData
from kato.utils.errors import InvalidInput
from kato.utils.info import GERM_FAMILIES, SCHEMA_VERSION


def field_to_json(field: ScalarField) -> dict:
    return field.describe()


def field_from_json(data: dict) -> ScalarField:
    return make_field(data.get("mode", "exact"), data.get("minpoly"))


def series_to_json(s: TruncSeries2) -> List[list]:
    return [[i, j, s.field.format(c)] for (i, j), c in sorted(s.items())]


def series_from_json(field: ScalarField, order: int, data: List[list]) -> TruncSeries2:
    return TruncSeries2(field, order, {(int(i), int(j)): field.parse(v) for i, j, v in data})


def signature_to_json(sig: BranchSignature) -> dict:
    return sig.to_dict()


def signature_from_json(data: dict) -> BranchSignature:
    try:
        m = Mat2Z(int(data["p"]), int(data["q"]), int(data["r"]), int(data["s"]))
        return derive_signature(m, int(data["l"]), data.get("ks"))
    except KeyError as e:
        raise InvalidInput(f"signature is missing the key {e}")


def germ_to_json(germ) -> dict:
    r"""
    {"family", ..., "mode", "minpoly"} for every germ family
    """
    if isinstance(germ, BiratGerm):
        f = germ.field
        out = {
            "family": germ.family,
            "sig": signature_to_json(germ.sig),
            "coeffs": {
                "a0": f.format(germ.a0),
                "a": [f.format(x) for x in germ.a],
                "aK": f.format(germ.aK),
            },
        }
        out.update(field_to_json(f))
        return out
    if isinstance(germ, FavreGerm):
        f = germ.field
        out = {
            "family": germ.family,
            "lam": f.format(germ.lam),
            "sigma": germ.sigma,
            "k": germ.k,
            "b": [[i, f.format(v)] for i, v in sorted(germ.b.items())],
            "c": f.format(germ.c),
        }
        out.update(field_to_json(f))
        return out
    if isinstance(germ, EnokiGerm):
        return {"family": germ.family, "t": [germ.t.real, germ.t.imag],
                "a": [[x.real, x.imag] for x in germ.a]}
    if isinstance(germ, IHGerm):
        return {"family": germ.family, "matrix": list(germ.matrix.as_tuple())}
    if isinstance(germ, HopfGerm):
        return {"family": germ.family, "alpha": [germ.alpha.real, germ.alpha.imag],
                "beta": [germ.beta.real, germ.beta.imag], "lam": [germ.lam.real, germ.lam.imag],
                "m": germ.m}
    raise InvalidInput(f"cannot serialize {type(germ).__name__}")


def _complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def germ_from_json(data: dict):
    if not isinstance(data, dict):
        raise InvalidInput(f"a germ must be a JSON object, got {type(data).__name__}")
    family = data.get("family")
    if family not in GERM_FAMILIES:
        raise InvalidInput(f"unknown germ family {family!r}")
    try:
        return _germ_from_json(family, data)
    except KeyError as e:
        raise InvalidInput(f"{family} germ is missing the key {e}")
    except (TypeError, AttributeError) as e:
        raise InvalidInput(f"malformed {family} germ: {e}")


def _germ_from_json(family: str, data: dict):
    if family == "birat":
        f = field_from_json(data)
        coeffs = data.get("coeffs", {})
        return BiratGerm(signature_from_json(data["sig"]), f, f.parse(coeffs["a0"]),
                         tuple(f.parse(x) for x in coeffs.get("a", [])),
                         f.parse(coeffs.get("aK", "0")))
    if family == "favre":
        f = field_from_json(data)
        return FavreGerm(f, f.parse(data["lam"]), int(data["sigma"]), int(data["k"]),
                         {int(i): f.parse(v) for i, v in data["b"]}, f.parse(data.get("c", "0")))
    if family == "enoki":
        return EnokiGerm(_complex(data["t"]), tuple(_complex(x) for x in data["a"]))
    if family == "ih":
        return IHGerm(Mat2Z(*[int(x) for x in data["matrix"]]))
    return HopfGerm(_complex(data["alpha"]), _complex(data["beta"]),
                    _complex(data.get("lam", 0)), int(data.get("m", 1)))


def certificate_to_json(cert: ConjugacyCertificate, valid: bool) -> Dict:
    f = cert.source.field
    residual_max = cert.residual_max()
    return {
        "schema": SCHEMA_VERSION,
        "source": germ_to_json(cert.source),
        "target": germ_to_json(cert.target),
        "phi": {
            "C": f.format(cert.phi.C),
            "A": [[i, j, f.format(v)] for (i, j), v in sorted(cert.phi.A.items())],
            "mu": series_to_json(cert.phi.mu),
            "eps": f.format(cert.phi.eps),
        },
        "residual_max": ("0" if residual_max == 0 else repr(residual_max)) if f.is_exact else residual_max,
        "order": cert.order,
        "extended_support": [list(pt) for pt in cert.extended_support],
        "stage": cert.stage,
        "valid": valid,
    }


def certificate_from_json(data: dict) -> ConjugacyCertificate:
    r"""
    rebuild a certificate; the residual is left empty for the verifier to recompute
    """
    if not isinstance(data, dict):
        raise InvalidInput(f"a certificate must be a JSON object, got {type(data).__name__}")
    try:
        source = germ_from_json(data["source"])
        target = germ_from_json(data["target"])
        order = int(data["order"])
        phi_data = data["phi"]
        f = source.field
        phi = PhiData(
            C=f.parse(phi_data["C"]),
            A={(int(i), int(j)): f.parse(v) for i, j, v in phi_data["A"]},
            mu=series_from_json(f, order, phi_data["mu"]),
            eps=f.parse(phi_data.get("eps", "1")),
        )
    except KeyError as e:
        raise InvalidInput(f"certificate is missing the key {e}")
    except (TypeError, AttributeError) as e:
        raise InvalidInput(f"malformed certificate: {e}")
    if not isinstance(source, BiratGerm):
        raise InvalidInput("the certificate source must be a birat germ")
    empty = TruncSeries2.zero(f, order)
    return ConjugacyCertificate(
        source=source,
        target=target,
        phi=phi,
        order=order,
        residual=(empty, empty),
        extended_support=[tuple(pt) for pt in data.get("extended_support", [])],
        stage=data.get("stage", "core"),
    )
