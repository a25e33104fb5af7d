"""
Verifier Module for Conjugacy Certificates
"""

from typing import Optional

from kato.normalform.conjugator import ConjugacyCertificate, residual_pair
from kato.utils.info import RESIDUAL_TOL, ROOT_TOL
from kato.utils.utils import log_info


def phi_is_admissible(cert: ConjugacyCertificate, tol: float = ROOT_TOL) -> bool:
    r"""
    C and A_10 nonzero, C^(k-1) = a0^r and A_10 a0^p = C^(p+q)
    """
    g, phi = cert.source, cert.phi
    f, sig = g.field, g.sig
    A10 = phi.A.get((1, 0), 0)
    if f.is_zero(phi.C, tol) or f.is_zero(A10, tol):
        return False

    def same(x, y) -> bool:
        return f.is_zero(x - y, tol * max(1.0, f.modulus(y)))

    return (same(phi.C ** (sig.kS - 1), g.a0 ** sig.r)
            and same(A10 * g.a0 ** sig.p, phi.C ** sig.pq))


class CertificateVerifier(object):
    r"""Verifier of F o phi = phi o G certificates"""

    def __init__(self, tol: float = RESIDUAL_TOL):
        r"""
        Parameters:
            tol: largest residual coefficient modulus accepted in complex mode
        """
        self.tol = tol
        self.valid_keys = ["certificate", "order"]

    def _parse_and_check_input(self, input_dict):
        r"""
        Check whether the input has the appropriate format
        Parameters:
            input_dict: a dictionary containing "certificate" and optionally "order"
        Returns:
            cert: the certificate to check
            order: the order to recompute at, never above the certificate order
        """
        if "certificate" not in input_dict:
            raise RuntimeError("Missing key of certificate!")
        for key in input_dict:
            if key not in self.valid_keys:
                raise ValueError("Unsupported key %s " % key)
        cert = input_dict["certificate"]
        if not isinstance(cert, ConjugacyCertificate):
            raise RuntimeError("CertificateVerifier needs a ConjugacyCertificate!")
        order: Optional[int] = input_dict.get("order")
        if order is None or order > cert.order:
            order = cert.order
        assert order >= 0, "verification order must be nonnegative"
        return cert, order

    def eval(self, input_dict: dict, verbose: bool = False) -> dict:
        r"""
        recompute F o phi and phi o G from the certificate data and compare

        Parameters:
            input_dict: a dictionary containing "certificate" and optionally "order"
            verbose: whether to log the outcome
        Returns:
            perf_dict: "valid", "residual_max" and "order"
        """
        cert, order = self._parse_and_check_input(input_dict)
        if not phi_is_admissible(cert):
            if verbose:
                log_info("certificate rejected: phi is not a conjugacy of the source normalization")
            return {"valid": False, "residual_max": float("inf"), "order": order}
        first, second = residual_pair(cert.source, cert.target, cert.phi, order)
        residual_max = max(first.max_abs(), second.max_abs())
        if cert.source.field.is_exact:
            valid = first.is_zero() and second.is_zero()
        else:
            valid = residual_max < self.tol
        if verbose:
            log_info(f"certificate at order {order}: residual {residual_max:.3e}, valid={valid}")
        return {"valid": valid, "residual_max": residual_max, "order": order}


def verify(cert: ConjugacyCertificate, order: Optional[int] = None, tol: float = RESIDUAL_TOL) -> bool:
    r"""
    True when the certificate's residual vanishes at its order (or at a lower one)
    """
    input_dict = {"certificate": cert}
    if order is not None:
        input_dict["order"] = order
    return CertificateVerifier(tol=tol).eval(input_dict)["valid"]
