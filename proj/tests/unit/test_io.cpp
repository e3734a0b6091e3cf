#include "test_support.hpp"

#include "tritter/error.hpp"
#include "tritter/io.hpp"
#include "tritter/tritter_state.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tritter;
using tritter::testing::Gen;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

} // namespace

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(std::log(9.0 / 5.0)), "0.587786664902");
    EXPECT_EQ(format_number(1.5e-20), "1.5e-20");
}

TEST(ParseComplex, Forms) {
    EXPECT_EQ(parse_complex("2+3i"), std::complex<double>(2, 3));
    EXPECT_EQ(parse_complex("-1.5-0.5i"), std::complex<double>(-1.5, -0.5));
    EXPECT_EQ(parse_complex("3"), std::complex<double>(3, 0));
    EXPECT_EQ(parse_complex("2i"), std::complex<double>(0, 2));
    EXPECT_EQ(parse_complex("-i"), std::complex<double>(0, -1));
    EXPECT_EQ(parse_complex("1e-3+2e+1i"), std::complex<double>(1e-3, 20));
    EXPECT_THROW(parse_complex(""), ParseError);
    EXPECT_THROW(parse_complex("2+3j"), ParseError);
    EXPECT_THROW(parse_complex("abc"), ParseError);
}

TEST(ParseComplex, RoundTripsFormatted) {
    Gen gen(51);
    for (int trial = 0; trial < 100; ++trial) {
        const std::complex<double> z{gen.uniform(-10, 10), gen.uniform(-10, 10)};
        const auto back = parse_complex(format_complex(z));
        EXPECT_NEAR(back.real(), z.real(), 1e-10);
        EXPECT_NEAR(back.imag(), z.imag(), 1e-10);
    }
}

TEST(CmJson, RoundTrip) {
    Gen gen(52);
    for (int trial = 0; trial < 100; ++trial) {
        const double l = gen.uniform(0.0, 0.999);
        const auto v = apply_loss(ideal_output_cm(l), LossConfig({gen.transmissivity(), gen.transmissivity(), 1.0}));
        const auto back = cm_from_json(write_cm(v, {l, {}, "closed-form", {1, 1, 1}}, Format::Json));
        for (Eigen::Index r = 0; r < 6; ++r)
            for (Eigen::Index c = 0; c < 6; ++c) EXPECT_NEAR(back(r, c), v(r, c), 1e-12 * std::max(1.0, std::abs(v(r, c))));
    }
}

TEST(CmJson, RejectsMalformed) {
    EXPECT_THROW(cm_from_json("not json"), ParseError);
    EXPECT_THROW(cm_from_json(R"({"schema_version":1,"kind":"report"})"), ParseError);
    EXPECT_THROW(cm_from_json(R"({"schema_version":2,"kind":"cm","matrix":[[0.5]]})"), ParseError);
    EXPECT_THROW(cm_from_json(R"({"schema_version":1,"kind":"cm","matrix":[[0.5,0],[0]]})"), ParseError);
}

TEST(CmCsv, HeaderAndVacuum) {
    const auto text = write_cm(CovarianceMatrix::vacuum(3), {}, Format::Csv);
    EXPECT_EQ(first_line(text), "row,x_a,p_a,x_b,p_b,x_c,p_c");
    EXPECT_NE(text.find("x_a,0.5,0,0,0,0,0\n"), std::string::npos);
}

TEST(Envelope, SchemaVersionAndKind) {
    const auto cm = write_cm(CovarianceMatrix::vacuum(3), {}, Format::Json);
    EXPECT_NE(cm.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(cm.find("\"kind\": \"cm\""), std::string::npos);
    const auto report = write_report(build_report(0.5, 0, 1.0, {}, default_measures()), Format::Json);
    EXPECT_NE(report.find("\"kind\": \"report\""), std::string::npos);
    const auto thr = write_thresholds(threshold_table({0.5}, {1}), Format::Json);
    EXPECT_NE(thr.find("\"kind\": \"thresholds\""), std::string::npos);
}

TEST(SweepCsv, ColumnOrder) {
    SweepSpec spec;
    spec.scenario = 1;
    spec.step = 0.5;
    spec.measures = parse_measure_list("S:ij->k,E:pair,E:1v2");
    const auto text = write_sweep(run_sweep(spec), Format::Csv);
    EXPECT_EQ(first_line(text),
              "T,1-T,E:a|b,E:c|ab,S:ab->c,closed:E:a|b,closed:E:c|ab,closed:S:ab->c,region,mismatch");
    EXPECT_NE(text.find("\n0.5,0.5,"), std::string::npos);
}

TEST(SweepCsv, LambdaSweepHeader) {
    SweepSpec spec;
    spec.variable = SweepVariable::Lambda;
    spec.stop = 0.5;
    spec.step = 0.25;
    spec.fixed = 1.0;
    spec.measures = parse_measure_list("E:a|bc");
    EXPECT_EQ(first_line(write_sweep(run_sweep(spec), Format::Csv)), "lambda,E:a|bc,region,mismatch");
}

TEST(ThresholdCsv, Rows) {
    const auto text = write_thresholds(threshold_table({0.5}, {2, 5}), Format::Csv);
    EXPECT_EQ(first_line(text), "scenario,direction,lambda,t_star,stated,deviation,method,found,stated_kind");
    EXPECT_NE(text.find("2,S:ab->c,0.5,,,,closed-form,present-throughout,present-throughout"), std::string::npos);
    EXPECT_NE(text.find("5,S:ab->c,0.5,0.75"), std::string::npos);
}

TEST(ReportCsv, Layout) {
    const auto text = write_report(build_report(0.5, 0, 1.0, {}, parse_measure_list("E:pair")), Format::Csv);
    EXPECT_EQ(first_line(text), "quantity,numeric,closed,difference,note");
    EXPECT_NE(text.find("E:a|b,0.587786664902,0.587786664902,"), std::string::npos);
    EXPECT_NE(text.find("region,,,,I\n"), std::string::npos);
}

TEST(VerifyOutput, Formats) {
    VerifyReport r;
    r.criteria.push_back({1, "golden CM", true, "max 1e-16, fine", {}});
    r.criteria.push_back({2, "other", false, "broken", {"note"}});
    EXPECT_FALSE(r.all_pass());
    const auto csv = write_verify(r, Format::Csv);
    EXPECT_NE(csv.find("1,golden CM,pass,max 1e-16; fine\n"), std::string::npos);
    EXPECT_NE(csv.find("2,other,fail,broken\n"), std::string::npos);
    const auto json = write_verify(r, Format::Json);
    EXPECT_NE(json.find("\"all_pass\": false"), std::string::npos);
    EXPECT_EQ(summary_line(r.criteria[1]), "[FAIL] criterion 2 other: broken");
}

TEST(Determinism, RepeatedWritesAreIdentical) {
    const auto measures = all_measures();
    const auto a = write_report(build_report(0.37, 4, 0.61, {}, measures), Format::Json);
    const auto b = write_report(build_report(0.37, 4, 0.61, {}, measures), Format::Json);
    EXPECT_EQ(a, b);
}

TEST(ParseFormat, Values) {
    EXPECT_EQ(parse_format("csv"), Format::Csv);
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_THROW(parse_format("xml"), ParseError);
}
