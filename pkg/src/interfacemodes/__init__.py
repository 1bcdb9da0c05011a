"""Floquet-Bloch analysis of damped 1D layered media and their interface modes."""

from .errors import (
    BandCollision,
    ConfigError,
    ContinuationBreakdown,
    Diverged,
    NoSignChange,
    NotARoot,
    ParityAmbiguous,
    PhaseRefinementExhausted,
    PoleDetected,
    PoleOnContour,
    RatioInconsistent,
    StepOutOfWindow,
    StepUnderflow,
    WindowInvaded,
)
from .medium import (
    DampedCell,
    InterfaceMedium,
    Layer,
    UnitCell,
    ValidationReport,
    load_config,
    medium_from_dict,
    permittivity_at,
    validate_cell,
    with_damping,
)
from .floquet import (
    BandCurve,
    EigenSplit,
    GapWindow,
    PointClassification,
    SpectrumKind,
    band_curves,
    cell_matrix,
    classify_point,
    common_gap_window,
    common_real_gaps,
    discriminant,
    layer_matrix,
    propagate_states,
    real_gaps,
    stable_eigenpair,
)
from .impedance import (
    ImpedanceSample,
    impedance_grid,
    interface_impedance,
    interface_pairing,
    surface_impedance_left,
    surface_impedance_right,
)
from .spectral import (
    BulkIndex,
    Circle,
    ContinuationAttempt,
    ModePrediction,
    Rectangle,
    RootResult,
    RoucheMap,
    bulk_index,
    continuation,
    find_enclosing_contour,
    find_root_real,
    predict_interface_mode,
    refine_root,
    rouche_map,
    winding_number,
    zak_phase_at_edge,
)
from .modes import (
    DecayEnvelope,
    DecayReport,
    ModeProfile,
    decay_envelope,
    interface_mode_profile,
    verify_decay,
)

__version__ = "0.1.0"
