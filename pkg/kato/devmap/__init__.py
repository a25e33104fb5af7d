from kato.devmap.projective import (
    ORIGIN,
    ProjPoint,
    apply_germ_projective,
    apply_inverse_projective,
    projective_distance,
)
from kato.devmap.developing import (
    ChartPoint,
    OrbitReport,
    commutativity_residuals,
    dev_eval,
    orbit_contraction_report,
    random_chart_points,
    sphere_preimage_samples,
)
from kato.germs.chain import inverse_blowup
