#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlim/bitword.hpp"
#include "rlim/channel.hpp"
#include "rlim/codec.hpp"
#include "rlim/enumeration.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// Arbitrary-precision counts cross the boundary as python ints, via their
// decimal representation.
template <>
struct type_caster<rlim::Count> {
    PYBIND11_TYPE_CASTER(rlim::Count, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = rlim::Count(static_cast<std::string>(py::str(src)));
        return true;
    }

    static handle cast(const rlim::Count& v, return_value_policy, handle) {
        return PyLong_FromString(v.str().c_str(), nullptr, 10);
    }
};

}  // namespace pybind11::detail

namespace {

using namespace rlim;

ChannelParams make_channel(double D, double rR, double r0, double ts, std::uint64_t M,
                           double sigma2, unsigned I) {
    ChannelParams p;
    p.diffusion = D;
    p.receiver_radius = rR;
    p.distance = r0;
    p.interval_s = ts;
    p.molecules = M;
    p.noise_var = sigma2;
    p.memory = I;
    p.validate();
    return p;
}

std::vector<std::uint8_t> as_bits(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw std::invalid_argument(std::string("stray character '") + c + "' in bit string");
    }
    return bits;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "weight-minimizing run-length-limited codes over a diffusive channel";

    py::class_<CodeParams>(m, "CodeParams")
        .def_readonly("order_i", &CodeParams::order_i)
        .def_readonly("info_bits_k", &CodeParams::info_bits_k)
        .def_readonly("length_n", &CodeParams::length_n)
        .def_readonly("internal_T", &CodeParams::internal_T)
        .def_readonly("shift", &CodeParams::shift)
        .def_property_readonly(
            "mode", [](const CodeParams& p) { return std::string(1, mode_char(p.mode)); })
        .def("__repr__", [](const CodeParams& p) {
            return "CodeParams(i=" + std::to_string(p.order_i) +
                   ", k=" + std::to_string(p.info_bits_k) + ", mode=" +
                   std::string(1, mode_char(p.mode)) + ", n=" + std::to_string(p.length_n) + ")";
        });

    py::class_<RlimCodec>(m, "Codec")
        .def(py::init([](unsigned order, unsigned info_bits, const std::string& mode) {
                 return RlimCodec::create(
                     CodeParams::resolve(order, info_bits, mode_from_string(mode)));
             }),
             py::arg("order"), py::arg("info_bits"), py::arg("mode") = "E")
        .def_property_readonly("params", &RlimCodec::params, py::return_value_policy::copy)
        .def(
            "encode",
            [](const RlimCodec& c, const Count& message) { return c.encode(message).str(); },
            py::arg("message"))
        .def(
            "decode",
            [](const RlimCodec& c, const std::string& word) {
                return c.decode(BitWord::from_string(word));
            },
            py::arg("word"))
        .def(
            "correct",
            [](const RlimCodec& c, const std::string& word) {
                return c.correct(BitWord::from_string(word)).str();
            },
            py::arg("word"))
        .def(
            "rank_word",
            [](const RlimCodec& c, const std::string& word) {
                return c.rank_word(BitWord::from_string(word));
            },
            py::arg("word"))
        .def(
            "project_decode",
            [](const RlimCodec& c, const std::string& word) {
                return c.project_decode(BitWord::from_string(word));
            },
            py::arg("word"))
        .def("codebook_weight", &RlimCodec::codebook_weight)
        .def("table_bits", [](const RlimCodec& c) { return c.tables().stored_bit_count(); });

    m.def("family_size", &family_size, py::arg("order"), py::arg("length"));
    m.def(
        "shortest_length",
        [](unsigned order, unsigned info_bits, const std::string& mode) {
            return shortest_length(order, info_bits, mode_from_string(mode));
        },
        py::arg("order"), py::arg("info_bits"), py::arg("mode") = "E");
    m.def(
        "table_bits",
        [](unsigned order, unsigned info_bits, const std::string& mode) {
            const CodeParams p = CodeParams::resolve(order, info_bits, mode_from_string(mode));
            return CountingTables::build(p.order_i, p.internal_T).stored_bit_count();
        },
        py::arg("order"), py::arg("info_bits"), py::arg("mode") = "E");
    m.def(
        "tap_profile",
        [](double D, double rR, double r0, double ts, unsigned I) {
            const TapProfile profile = tap_profile(make_channel(D, rR, r0, ts, 1, 0.0, I));
            return py::make_tuple(profile.taps, profile.tail);
        },
        py::arg("D") = 79.4, py::arg("rR") = 5.0, py::arg("r0") = 10.0, py::arg("ts") = 0.2,
        py::arg("I") = 100);
    m.def(
        "simulate",
        [](const std::string& bits, std::uint64_t seed, double D, double rR, double r0, double ts,
           std::uint64_t M, double sigma2, unsigned I) {
            return simulate_reception(make_channel(D, rR, r0, ts, M, sigma2, I), as_bits(bits),
                                      Rng(seed));
        },
        py::arg("bits"), py::arg("seed"), py::arg("D") = 79.4, py::arg("rR") = 5.0,
        py::arg("r0") = 10.0, py::arg("ts") = 0.2, py::arg("M") = 500, py::arg("sigma2") = 5.0,
        py::arg("I") = 100);
}
