"""qcforge: binary quasi-cyclic self-dual codes via the cubic construction."""

from .gf import Factorization, RingElem, factor_cyclotomic, poly_reciprocal, ring_conj
from .lincode import (
    BinaryCode,
    QuaternaryCode,
    SelfDualType,
    WeightEnumerator,
    check_divisibility,
    classify_type,
    cyclic_code,
    euclidean_dual,
    from_rows,
    hermitian_dual,
    is_self_dual,
    min_distance,
    weight_enumerator,
)
from .qc import (
    CubicComponents,
    QcShape,
    builtin_templates,
    check_quasi_cyclic,
    construct_cubic,
    crt_decompose,
    cubic_selfdual_check,
    decompose_cubic,
    distance_bound,
    extract_parameter,
    phi_inverse,
    phi_map,
    prop22_check,
    shift_by_block,
    verify_decomposition_selfdual,
)
from .equiv import AutInfo, CanonicalForm, Equivalence, are_equivalent, aut_order, canonicalize
from .search import (
    Catalog,
    ComponentDb,
    SearchConfig,
    classify_cubic,
    enumerate_selfdual,
    load_component_db,
    random_selfdual,
    run_search,
)

__version__ = "0.1.0"
