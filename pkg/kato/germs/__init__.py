from kato.germs.families import BiratGerm, EnokiGerm, FavreGerm, HopfGerm, IHGerm
from kato.germs.forms import (
    birat_generic_form,
    birat_origin_form,
    compose_blowups_oracle,
    jacobian_det,
    jacobian_monomial,
)
from kato.germs.invariants import (
    favre_type,
    global_vector_field,
    index,
    kappa_of,
    lambda_of,
    uv_exponents,
    vf_condition,
)
from kato.germs.actions import apply_eps_action, apply_l_action, l_group
from kato.germs.dynamics import iterate, orbit_norms
from kato.germs.chain import birat_chain_eval, birat_inverse_chain, blowup_chain, inverse_blowup
