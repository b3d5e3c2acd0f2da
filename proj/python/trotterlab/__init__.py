from ._core import (
    Grid,
    c_n,
    cf1_closed_form_cap,
    cf2_closed_form_cap,
    chls3,
    chls_upper_bound,
    cutoff_profile,
    f_le,
    h2_growth_nbody,
    h2_growth_one_body,
    one_body_theorem_bound,
    preset_names,
    preset_text,
    run_audit,
    run_errrep_check,
    run_h2_trace,
    run_rate_study,
    second_moment_bound,
    theorem_bound,
    tilde_cf,
    tilde_cf_certified,
    tilde_cn,
    tilde_cn_certified,
    vsin_l2_norm,
)
from ._core import __version__

__all__ = [
    "Grid",
    "c_n",
    "cf1_closed_form_cap",
    "cf2_closed_form_cap",
    "chls3",
    "chls_upper_bound",
    "cutoff_profile",
    "f_le",
    "h2_growth_nbody",
    "h2_growth_one_body",
    "one_body_theorem_bound",
    "preset_names",
    "preset_text",
    "run_audit",
    "run_errrep_check",
    "run_h2_trace",
    "run_rate_study",
    "second_moment_bound",
    "theorem_bound",
    "tilde_cf",
    "tilde_cf_certified",
    "tilde_cn",
    "tilde_cn_certified",
    "vsin_l2_norm",
    "__version__",
]
