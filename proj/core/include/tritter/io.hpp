#pragma once

// CSV / JSON serialization. Every float goes out with 12 significant digits,
// except the JSON CM matrix, which is written at round-trip precision.

#include "tritter/analysis.hpp"
#include "tritter/symplectic.hpp"
#include "tritter/verify.hpp"

#include <complex>
#include <string>

namespace tritter {

inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

/// "%.12g", with -0 printed as 0.
std::string format_number(double x);

/// "2+3i", "-1.5-0.5i", "3", "2i", "-i". Throws ParseError.
std::complex<double> parse_complex(const std::string& text);

std::string format_complex(std::complex<double> z);

struct CmMeta {
    double lambda = 0.0;
    std::complex<double> gamma{};
    /// "closed-form" or "transform".
    std::string via = "closed-form";
    /// Per-mode transmissivities.
    std::vector<double> transmissivity{1.0, 1.0, 1.0};
};

std::string write_cm(const CovarianceMatrix& v, const CmMeta& meta, Format format);

/// Inverse of write_cm(..., Format::Json). Throws ParseError.
CovarianceMatrix cm_from_json(const std::string& text);

std::string write_report(const CorrelationReport& report, Format format);
std::string write_sweep(const SweepTable& table, Format format);
std::string write_thresholds(const std::vector<ThresholdRow>& rows, Format format);
std::string write_verify(const VerifyReport& report, Format format);

} // namespace tritter
