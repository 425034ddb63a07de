"""Class-size frequency tables of normal subgroups and the hypercentrality
criteria they determine, checked against direct structural computation."""

from .catalog import GroupSpec, build, default_corpus, load_group_file, named_subgroups, parse_spec, resolve_normal
from .classes import (
    ClassFrequency,
    conjugacy_classes,
    frequency_function,
    g_classes_in,
    s_pi_set,
    s_pi_size,
)
from .core import (
    ElementSubset,
    FiniteGroup,
    Permutation,
    close_generators,
    generate,
    p_part,
    quotient,
)
from .criteria import (
    AnalysisReport,
    PrimeVerdict,
    analyze,
    central_quotient_check,
    hypercentral_criterion,
    hypercentre_p_part,
    p_elements_centralize_check,
    sylow_centre_check,
    sylow_hypercentral_criterion,
)
from .structure import (
    centralizer,
    centre,
    hypercentre,
    normal_closure,
    normal_subgroups,
    o_p,
    o_p_prime,
    sylow,
    upper_central_series,
)

__version__ = "0.1.0"
