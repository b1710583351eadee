#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>

#include "gfdm/channel.hpp"
#include "gfdm/pulse.hpp"
#include "gfdm/receiver.hpp"

namespace gfdm::sim {

enum class SnrUnit { EsN0, EbN0 };
enum class ExecPath { Fast, Direct };

struct SimConfig {
    GfdmParams params{8, 128, 16, 1.0, 0.0};
    PulseSpec pulse{PulseFamily::RaisedCosine, 0.1};
    std::string channel = "awgn";  ///< "awgn", "ETU" or a profile file path
    FdeKind fde = FdeKind::MMSE;
    EqualizerKind equalizer = EqualizerKind::MmseUnbiased;
    unsigned qam_order = 16;
    std::vector<double> snr_grid_db;
    std::optional<SnrUnit> snr_unit;  ///< must be set explicitly
    std::uint64_t min_bits = 1'000'000;
    std::uint64_t seed = 1;
    bool coding = false;
    ExecPath path = ExecPath::Fast;
    unsigned workers = 1;
    std::size_t batch_blocks = 16;
    double sample_rate_hz = 1.92e6;
    double carrier_hz = 2.4e9;
    double doppler_hz = 100.0;  ///< metadata only; channels are block fading
    std::size_t ofdm_subcarriers = 128;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool record_decisions = false;

    bool is_awgn() const;
    double code_rate() const { return coding ? 0.5 : 1.0; }
    /// sigma_d^2 / sigma_nu^2 in dB for a grid point.
    double es_n0_db(double snr_db) const;

    /// Throws ErrorKind::Configuration / Parameter on inconsistent settings.
    void validate() const;
};

/// Named configurations: "case1" (N=128, M=8) and "case2" (N=8, M=128).
SimConfig preset(const std::string& name);

/// key = value lines; '#' starts a comment. Unknown keys are errors.
void apply_config_text(SimConfig& cfg, std::istream& is);
void apply_config_kv(SimConfig& cfg, const std::string& key, const std::string& value);
SimConfig load_config(const std::filesystem::path& path);

struct BerRecord {
    double snr_db = 0;
    std::uint64_t bits_simulated = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0;
    double wall_time_s = 0;
    std::uint64_t decision_digest = 0;  ///< FNV-1a over decided info bits, in order
    Bits decisions;                     ///< filled only when record_decisions is set
};

std::vector<BerRecord> run_ber_sweep(const SimConfig& config);

/// CP-OFDM reference with the same symbol energy, channel and FDE: one
/// sub-symbol of ofdm_subcarriers carriers per block, rectangular pulse.
std::vector<BerRecord> ofdm_baseline(const SimConfig& config);

struct ConditionRow {
    std::size_t M;
    EqualizerKind kind;
    double kappa;  ///< +inf when the ZF equalizer is singular
};

std::vector<ConditionRow> run_condition_sweep(std::size_t n, std::span<const std::size_t> m_list,
                                              const PulseSpec& pulse, double snr_db);

void write_ber_csv(std::ostream& os, std::span<const BerRecord> rows, const SimConfig& cfg,
                   bool include_timing = true);
void write_condition_csv(std::ostream& os, std::span<const ConditionRow> rows);
/// Gnuplot script plotting BER vs SNR from `csv_name`.
void write_gnuplot_script(std::ostream& os, const std::string& csv_name, const SimConfig& cfg);

/// Key/value pairs describing a configuration, for CSV headers and sidecars.
std::map<std::string, std::string> describe(const SimConfig& cfg);

}  // namespace gfdm::sim
