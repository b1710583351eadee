"""Low-complexity GFDM transceiver: modulation, equalization, flop model and BER simulation."""

from ._gfdm import (
    GfdmError,
    ber_csv,
    bias_scalar,
    condition_number,
    conv_encode,
    equalize,
    equalizer_matrix,
    fde_equalize,
    fft_flops,
    modulate,
    modulate_direct,
    modulation_matrix,
    prototype_pulse,
    qam_demap,
    qam_map,
    run_ber_sweep,
    scheme_flops,
    spectral_diagonal,
    viterbi_decode,
)

__all__ = [
    "GfdmError",
    "ber_csv",
    "bias_scalar",
    "condition_number",
    "conv_encode",
    "equalize",
    "equalizer_matrix",
    "fde_equalize",
    "fft_flops",
    "modulate",
    "modulate_direct",
    "modulation_matrix",
    "prototype_pulse",
    "qam_demap",
    "qam_map",
    "run_ber_sweep",
    "scheme_flops",
    "spectral_diagonal",
    "viterbi_decode",
]
