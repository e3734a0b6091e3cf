#include "tritter/io.hpp"

#include "tritter/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace tritter {

using Json = nlohmann::ordered_json;

namespace {

double sig12(double x) {
    if (x == 0.0) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return sig12(x);
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json envelope(const char* kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

std::string csv_field(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

Json closed_form_json(const ClosedForm& c) {
    Json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["domain_ok"] = c.domain_ok;
    j["suspected_erratum"] = c.suspected_erratum;
    return j;
}

std::string threshold_note(const ThresholdResult& r) {
    if (r.t_star) return "threshold";
    return r.present_throughout ? "present-throughout" : "absent-throughout";
}

std::string stated_note(const StatedThreshold& s) {
    if (s.t_star) return s.small_lambda_limit ? "small-lambda-limit" : "constant";
    return s.present_throughout ? "present-throughout" : "none";
}

} // namespace

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw ParseError("unknown format '" + text + "' (use csv or json)");
}

std::string format_number(double x) {
    if (x == 0.0) return "0";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::complex<double> parse_complex(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ') text += c;
    if (text.empty()) throw ParseError("empty complex number");

    auto parse_real = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw ParseError("cannot parse complex number '" + raw + "'");
        }
        if (used != part.size()) throw ParseError("cannot parse complex number '" + raw + "'");
        return v;
    };

    if (text.back() != 'i') return {parse_real(text), 0.0};

    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty()) return {0.0, 1.0};
        return {0.0, parse_real(body)};
    }
    return {parse_real(body.substr(0, split)), parse_real(body.substr(split))};
}

std::string format_complex(std::complex<double> z) {
    std::string s = format_number(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
    return s;
}

std::string write_cm(const CovarianceMatrix& v, const CmMeta& meta, Format format) {
    const Eigen::MatrixXd& m = v.matrix();
    if (format == Format::Csv) {
        static const char* labels[] = {"x_a", "p_a", "x_b", "p_b", "x_c", "p_c"};
        std::ostringstream out;
        out << "row";
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << (c < 6 ? labels[c] : std::to_string(c));
        out << '\n';
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            out << (r < 6 ? labels[r] : std::to_string(r));
            for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << format_number(m(r, c));
            out << '\n';
        }
        return out.str();
    }

    Json j = envelope("cm");
    j["lambda"] = number(meta.lambda);
    j["gamma"] = format_complex(meta.gamma);
    j["via"] = meta.via;
    Json t = Json::array();
    for (double x : meta.transmissivity) t.push_back(number(x));
    j["transmissivity"] = t;
    j["n_modes"] = v.n_modes();
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c) == 0.0 ? 0.0 : m(r, c));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    return dump(j);
}

CovarianceMatrix cm_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("kind", "") != "cm") throw ParseError("JSON record is not a cm record");
    if (j.value("schema_version", 0) != kSchemaVersion) throw ParseError("unsupported schema_version");
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) throw ParseError("cm record has no matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("cm matrix is not square");
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& x = row[static_cast<std::size_t>(c)];
            if (!x.is_number()) throw ParseError("cm matrix entry is not a number");
            m(r, c) = x.get<double>();
        }
    }
    return CovarianceMatrix(m);
}

std::string write_report(const CorrelationReport& report, Format format) {
    if (format == Format::Csv) {
        std::ostringstream out;
        out << "quantity,numeric,closed,difference,note\n";
        for (const auto& e : report.entries) {
            out << e.id.to_string() << ',' << format_number(e.numeric.value) << ',';
            if (e.closed) {
                out << format_number(e.comparison->closed_clamped) << ',' << format_number(e.comparison->difference)
                    << ',' << (e.closed->suspected_erratum ? "suspected-erratum" : e.comparison->within_tolerance ? "ok" : "mismatch");
            } else {
                out << ",,";
            }
            out << '\n';
        }
        for (const auto& m : report.monogamy) {
            const auto r = ScenarioRoles::for_single(m.k);
            const std::string k = modes_label({m.k}), ij = modes_label({r.i, r.j});
            out << "R:" << ij << "->" << k << ',' << format_number(m.pair_to_single) << ",,,monogamy\n";
            out << "R:" << k << "->" << ij << ',' << format_number(m.single_to_pair) << ",,,monogamy\n";
        }
        out << "region,,,," << to_string(report.region) << '\n';
        return out.str();
    }

    Json j = envelope("report");
    j["lambda"] = number(report.lambda);
    if (report.scenario >= 0) {
        j["scenario"] = report.scenario;
        j["T"] = number(report.t);
    }
    Json t = Json::array();
    for (std::size_t m = 0; m < report.loss.n_modes(); ++m) t.push_back(number(report.loss[m]));
    j["transmissivity"] = t;
    j["roles"] = {{"k", std::string(1, mode_label(report.roles.k))},
                  {"i", std::string(1, mode_label(report.roles.i))},
                  {"j", std::string(1, mode_label(report.roles.j))}};
    Json measures = Json::array();
    for (const auto& e : report.entries) {
        Json m;
        m["id"] = e.id.to_string();
        m["numeric"] = number(e.numeric.value);
        if (e.closed) {
            m["closed"] = closed_form_json(*e.closed);
            m["difference"] = number(e.comparison->difference);
            m["within_tolerance"] = e.comparison->within_tolerance;
        }
        measures.push_back(m);
    }
    j["measures"] = measures;
    Json mono = Json::array();
    for (const auto& m : report.monogamy)
        mono.push_back({{"k", std::string(1, mode_label(m.k))},
                        {"pair_to_single", number(m.pair_to_single)},
                        {"single_to_pair", number(m.single_to_pair)}});
    j["monogamy"] = mono;
    j["region"] = to_string(report.region);
    return dump(j);
}

std::string write_sweep(const SweepTable& table, Format format) {
    const bool t_sweep = table.spec.variable == SweepVariable::Transmissivity;
    std::vector<bool> has_closed(table.measures.size(), false);
    for (const auto& row : table.rows)
        for (std::size_t m = 0; m < row.cells.size(); ++m) has_closed[m] = has_closed[m] || row.cells[m].closed.has_value();

    if (format == Format::Csv) {
        std::ostringstream out;
        out << (t_sweep ? "T,1-T" : "lambda");
        for (const auto& id : table.measures) out << ',' << id.to_string();
        for (std::size_t m = 0; m < table.measures.size(); ++m)
            if (has_closed[m]) out << ",closed:" << table.measures[m].to_string();
        out << ",region,mismatch\n";
        for (const auto& row : table.rows) {
            if (t_sweep)
                out << format_number(row.t) << ',' << format_number(1.0 - row.t);
            else
                out << format_number(row.lambda);
            for (const auto& cell : row.cells) out << ',' << format_number(cell.numeric);
            for (std::size_t m = 0; m < row.cells.size(); ++m)
                if (has_closed[m]) out << ',' << (row.cells[m].closed ? format_number(row.cells[m].closed->value) : "");
            out << ',' << to_string(row.region) << ',' << (row.mismatch ? 1 : 0) << '\n';
        }
        return out.str();
    }

    Json j = envelope("sweep");
    j["variable"] = t_sweep ? "T" : "lambda";
    j[t_sweep ? "lambda" : "T"] = number(table.spec.fixed);
    j["scenario"] = table.spec.scenario;
    Json ids = Json::array();
    for (const auto& id : table.measures) ids.push_back(id.to_string());
    j["measures"] = ids;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        if (t_sweep) {
            r["T"] = number(row.t);
            r["1-T"] = number(1.0 - row.t);
        } else {
            r["lambda"] = number(row.lambda);
        }
        Json values = Json::array(), closed = Json::array();
        for (const auto& cell : row.cells) {
            values.push_back(number(cell.numeric));
            closed.push_back(cell.closed ? number(cell.closed->value) : Json(nullptr));
        }
        r["numeric"] = values;
        r["closed"] = closed;
        r["region"] = to_string(row.region);
        r["mismatch"] = row.mismatch;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["any_mismatch"] = table.any_mismatch();
    return dump(j);
}

std::string write_thresholds(const std::vector<ThresholdRow>& rows, Format format) {
    if (format == Format::Csv) {
        std::ostringstream out;
        out << "scenario,direction,lambda,t_star,stated,deviation,method,found,stated_kind\n";
        for (const auto& r : rows) {
            out << r.scenario << ',' << MeasureId{r.id.kind, r.id.party_a, r.id.party_b, {}}.to_string() << ','
                << format_number(r.lambda) << ',' << csv_field(r.found.t_star) << ',' << csv_field(r.stated.t_star)
                << ',' << csv_field(r.deviation) << ',' << (r.found.numeric ? "numeric" : "closed-form") << ','
                << threshold_note(r.found) << ',' << stated_note(r.stated) << '\n';
        }
        return out.str();
    }

    Json j = envelope("thresholds");
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json x;
        x["scenario"] = r.scenario;
        x["direction"] = MeasureId{r.id.kind, r.id.party_a, r.id.party_b, {}}.to_string();
        x["lambda"] = number(r.lambda);
        x["t_star"] = number(r.found.t_star);
        x["stated"] = number(r.stated.t_star);
        x["deviation"] = number(r.deviation);
        x["method"] = r.found.numeric ? "numeric" : "closed-form";
        x["found"] = threshold_note(r.found);
        x["stated_kind"] = stated_note(r.stated);
        arr.push_back(x);
    }
    j["rows"] = arr;
    return dump(j);
}

std::string write_verify(const VerifyReport& report, Format format) {
    if (format == Format::Csv) {
        std::ostringstream out;
        out << "criterion,name,pass,detail\n";
        for (const auto& c : report.criteria) {
            std::string detail = c.detail;
            for (char& ch : detail)
                if (ch == ',') ch = ';';
            out << c.id << ',' << c.name << ',' << (c.pass ? "pass" : "fail") << ',' << detail << '\n';
        }
        return out.str();
    }

    Json j = envelope("verify");
    Json arr = Json::array();
    for (const auto& c : report.criteria) {
        Json x;
        x["criterion"] = c.id;
        x["name"] = c.name;
        x["pass"] = c.pass;
        x["detail"] = c.detail;
        x["notes"] = c.notes;
        arr.push_back(x);
    }
    j["criteria"] = arr;
    j["all_pass"] = report.all_pass();
    return dump(j);
}

} // namespace tritter
