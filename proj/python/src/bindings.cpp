#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <sstream>

#include "gfdm/fec.hpp"
#include "gfdm/flops.hpp"
#include "gfdm/qam.hpp"
#include "gfdm/sim.hpp"
#include "gfdm/spectral.hpp"

namespace py = pybind11;
using namespace gfdm;

namespace {

using CArray = py::array_t<cdouble, py::array::c_style | py::array::forcecast>;
using BitArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

std::span<const cdouble> view(const CArray& a) { return {a.data(), static_cast<std::size_t>(a.size())}; }
std::span<const std::uint8_t> view(const BitArray& a) { return {a.data(), static_cast<std::size_t>(a.size())}; }

template <class T>
py::array_t<T> to_numpy(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<cdouble> to_numpy(const CMatrix& m) {
    py::array_t<cdouble> out({m.rows(), m.cols()});
    auto r = out.mutable_unchecked<2>();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return out;
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

GfdmParams geometry(std::size_t M, std::size_t N) {
    GfdmParams p{M, N, 0, 1.0, 0.0};
    p.validate();
    return p;
}

PrototypeFilter pulse_of(const CArray& g, const GfdmParams& p) {
    return pulse_from_coefficients(CVec(view(g).begin(), view(g).end()), p);
}

std::string as_config_value(const py::handle& v) {
    if (py::isinstance<py::bool_>(v)) return v.cast<bool>() ? "true" : "false";
    if (py::isinstance<py::str>(v)) return v.cast<std::string>();
    if (py::isinstance<py::sequence>(v)) {
        std::string out;
        for (const auto& item : v.cast<py::sequence>()) {
            if (!out.empty()) out += ",";
            out += py::str(item).cast<std::string>();
        }
        return out;
    }
    return py::str(v).cast<std::string>();
}

sim::SimConfig config_from_dict(const py::dict& d) {
    sim::SimConfig cfg;
    if (d.contains("preset")) cfg = sim::preset(d["preset"].cast<std::string>());
    for (const auto& [k, v] : d) {
        const auto key = k.cast<std::string>();
        if (key != "preset") sim::apply_config_kv(cfg, key, as_config_value(v));
    }
    return cfg;
}

py::list records_to_list(const std::vector<sim::BerRecord>& rows) {
    py::list out;
    for (const auto& r : rows) {
        py::dict row;
        row["snr_db"] = r.snr_db;
        row["bits_simulated"] = r.bits_simulated;
        row["bit_errors"] = r.bit_errors;
        row["ber"] = r.ber;
        row["wall_time_s"] = r.wall_time_s;
        row["decision_digest"] = r.decision_digest;
        out.append(row);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_gfdm, m) {
    m.doc() = "Low-complexity GFDM transceiver";

    static PyObject* gfdm_error = py::exception<Error>(m, "GfdmError").release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::handle(gfdm_error)(e.what());
            inst.attr("kind") = e.kind_name();
            inst.attr("bin") = e.bin() ? py::cast(*e.bin()) : py::none();
            PyErr_SetObject(gfdm_error, inst.ptr());
        }
    });

    m.def(
        "prototype_pulse",
        [](std::size_t M, std::size_t N, const std::string& pulse) {
            return to_numpy(build_prototype_pulse(PulseSpec::parse(pulse), geometry(M, N)).g);
        },
        py::arg("M"), py::arg("N"), py::arg("pulse") = "rc:0.1");

    m.def(
        "spectral_diagonal",
        [](const CArray& g, std::size_t M, std::size_t N) {
            const auto p = geometry(M, N);
            const auto s = spectral_diagonal(pulse_of(g, p), p);
            return py::make_tuple(to_numpy(s.lambda), to_numpy(s.lambda_bar));
        },
        py::arg("g"), py::arg("M"), py::arg("N"), "Returns (lambda, lambda_bar).");

    m.def(
        "modulation_matrix",
        [](const CArray& g, std::size_t M, std::size_t N, bool factored) {
            const auto p = geometry(M, N);
            const auto pulse = pulse_of(g, p);
            return to_numpy(factored ? build_modmatrix_factored(pulse, p).a : build_modmatrix_direct(pulse, p).a);
        },
        py::arg("g"), py::arg("M"), py::arg("N"), py::arg("factored") = false);

    m.def(
        "modulate",
        [](const CArray& d, const CArray& lambda_bar, std::size_t M, std::size_t N) {
            return to_numpy(modulate_fast(geometry(M, N), view(lambda_bar), view(d)).x);
        },
        py::arg("d"), py::arg("lambda_bar"), py::arg("M"), py::arg("N"));

    m.def(
        "modulate_direct",
        [](const CArray& d, const CArray& g, std::size_t M, std::size_t N) {
            const auto p = geometry(M, N);
            return to_numpy(modulate_direct(build_modmatrix_direct(pulse_of(g, p), p), view(d)).x);
        },
        py::arg("d"), py::arg("g"), py::arg("M"), py::arg("N"));

    m.def(
        "equalize",
        [](const CArray& y, const CArray& lambda_bar, std::size_t M, std::size_t N, const std::string& kind,
           double snr_ratio) {
            const auto f = build_deq(view(lambda_bar), parse_equalizer_kind(kind), snr_ratio);
            return to_numpy(equalize_fast(view(y), f, geometry(M, N)));
        },
        py::arg("y"), py::arg("lambda_bar"), py::arg("M"), py::arg("N"), py::arg("kind") = "zf",
        py::arg("snr_ratio") = 0.0);

    m.def(
        "equalizer_matrix",
        [](const CArray& g, std::size_t M, std::size_t N, const std::string& kind, double snr_ratio) {
            const auto p = geometry(M, N);
            return to_numpy(
                build_equalizer_direct(build_modmatrix_direct(pulse_of(g, p), p), parse_equalizer_kind(kind), snr_ratio));
        },
        py::arg("g"), py::arg("M"), py::arg("N"), py::arg("kind") = "zf", py::arg("snr_ratio") = 0.0);

    m.def(
        "fde_equalize",
        [](const CArray& z, const CArray& lambda, const std::string& kind, double snr_ratio) {
            return to_numpy(fde_equalize(view(z), view(lambda), parse_fde_kind(kind), snr_ratio));
        },
        py::arg("z"), py::arg("lambda_"), py::arg("kind") = "zf", py::arg("snr_ratio") = 0.0);

    m.def(
        "bias_scalar", [](const CArray& lambda, double snr_ratio) { return bias_scalar(view(lambda), snr_ratio); },
        py::arg("lambda_"), py::arg("snr_ratio"));

    m.def(
        "condition_number",
        [](const CArray& lambda_bar, const std::string& kind, double snr_ratio) {
            return condition_number(parse_equalizer_kind(kind), view(lambda_bar), snr_ratio);
        },
        py::arg("lambda_bar"), py::arg("kind") = "zf", py::arg("snr_ratio") = 0.0);

    m.def("fft_flops", [](std::size_t size) { return flops::fft_flops(size); }, py::arg("size"));

    m.def(
        "scheme_flops",
        [](const std::string& scheme, std::size_t M, std::size_t N, const std::string& channel, std::size_t L,
           std::size_t I) {
            return flops::scheme_flops(flops::parse_scheme(upper(scheme)), flops::parse_channel(upper(channel)), M, N,
                                       {L, I});
        },
        py::arg("scheme"), py::arg("M"), py::arg("N"), py::arg("channel") = "awgn", py::arg("L") = 0,
        py::arg("I") = 8);

    m.def(
        "conv_encode", [](const BitArray& bits) { return to_numpy(fec::conv_encode(view(bits))); },
        py::arg("bits"));
    m.def(
        "viterbi_decode", [](const BitArray& bits) { return to_numpy(fec::viterbi_decode(view(bits))); },
        py::arg("code_bits"));

    m.def(
        "qam_map", [](const BitArray& bits, unsigned order) { return to_numpy(qam_map(view(bits), order)); },
        py::arg("bits"), py::arg("order") = 16);
    m.def(
        "qam_demap", [](const CArray& s, unsigned order) { return to_numpy(qam_demap(view(s), order)); },
        py::arg("symbols"), py::arg("order") = 16);

    m.def(
        "run_ber_sweep",
        [](const py::dict& config, bool ofdm) {
            const auto cfg = config_from_dict(config);
            std::vector<sim::BerRecord> rows;
            {
                py::gil_scoped_release release;
                rows = ofdm ? sim::ofdm_baseline(cfg) : sim::run_ber_sweep(cfg);
            }
            return records_to_list(rows);
        },
        py::arg("config"), py::arg("ofdm") = false,
        "Runs a BER sweep. Keys follow the CLI config format; 'preset' is applied first.");

    m.def(
        "ber_csv",
        [](const py::dict& config, bool timing) {
            const auto cfg = config_from_dict(config);
            std::vector<sim::BerRecord> rows;
            {
                py::gil_scoped_release release;
                rows = sim::run_ber_sweep(cfg);
            }
            std::ostringstream os;
            sim::write_ber_csv(os, rows, cfg, timing);
            return os.str();
        },
        py::arg("config"), py::arg("timing") = false);
}
