from kato.normalform.lattice import LatticeSet, e_infty, e_m, mu_bound, resonances
from kato.normalform.conjugator import (
    ConjugacyCertificate,
    ConjugacySolver,
    CoreSystem,
    PhiData,
    core_system,
    default_order,
    leading_coefficients,
    mu_series,
    normalize,
    residual_pair,
)
from kato.normalform.certificate import CertificateVerifier, verify
from kato.normalform.equivalence import birat_equivalent, favre_equivalent
