#ifndef GIRTHFORGE_REPORT_HPP
#define GIRTHFORGE_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "girthforge/bounds.hpp"
#include "girthforge/construct.hpp"
#include "girthforge/montecarlo.hpp"

namespace girthforge {

// Hand-rolled JSON emission with fixed key order and reals printed to
// 17 significant digits, so identical inputs give byte-identical
// reports (golden-file friendly).
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key = "");
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& field(const std::string& key, const char* value);
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& field(const std::string& key, std::int64_t value);
    JsonWriter& field(const std::string& key, std::uint64_t value);
    JsonWriter& field(const std::string& key, int value);
    JsonWriter& key(const std::string& k); // for nested object/array values
    JsonWriter& value(const std::string& v);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);

    std::string str() const { return out_; }

    static std::string escape(const std::string& s);
    static std::string real(double v); // %.17g; nan/inf become null

private:
    void item_prefix();
    std::string out_;
    std::vector<bool> first_in_frame_;
    bool after_key_ = false;
};

struct ReportMeta {
    std::string operation;
    const ModelParams* params = nullptr;
    std::string pattern_name;
    std::uint64_t trials = 0;
};

// {operation, params, trials, seed, mean, variance, standard_error,
//  bound_value, bound_kind, verdict} (+ asymptotic companion)
std::string estimate_report(const ReportMeta& meta, const Estimate& est,
                            double asymptotic_log);

std::string good_arc_load_report(const ReportMeta& meta, const GoodArcLoadResult& result);

std::string zu_report(const ReportMeta& meta, const ZuResult& result, int tau, int u_size);

std::string chernoff_report(const ChernoffRow& row);

std::string bound_table_report(const BoundTable& table);

std::string verification_report_json(const VerificationReport& report);

// CSV with one line per trial; header "trial,count" or custom columns.
std::string raw_csv(const std::vector<std::uint64_t>& raw);
std::string raw_csv_columns(const std::vector<std::string>& columns,
                            const std::vector<std::vector<std::uint64_t>>& rows);

} // namespace girthforge

#endif
