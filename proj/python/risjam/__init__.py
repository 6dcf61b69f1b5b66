"""Link-level simulator of malicious-RIS jamming against downlink multi-user
massive MIMO.

The heavy lifting lives in the compiled extension ``risjam._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    CsiErrorMode,
    IoError,
    LinkGains,
    ParseError,
    SinrBreakdown,
    StackedOperator,
    SystemConfig,
    TrialContext,
    TrialRecord,
    ValidationError,
    Vec2,
    __version__,
    attack_objective,
    build_cascade_operator,
    cascade_channel,
    config_digest,
    config_from_json,
    config_to_json,
    corrupt_csi,
    dbm_to_linear,
    default_config,
    disco_profile,
    khatri_rao_cols,
    link_gains,
    load_scenario,
    make_trial_context,
    optimize_phases,
    path_loss,
    run_campaign,
    run_trial,
    save_scenario,
    stack_weighted,
    user_rate,
    validate,
)
