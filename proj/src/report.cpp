#include "girthforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace girthforge {

void JsonWriter::item_prefix() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_in_frame_.empty()) {
        if (!first_in_frame_.back()) out_ += ",";
        first_in_frame_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    item_prefix();
    out_ += "{";
    first_in_frame_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    first_in_frame_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
    if (!k.empty()) key(k);
    item_prefix();
    out_ += "[";
    first_in_frame_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    first_in_frame_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    item_prefix();
    out_ += "\"" + escape(k) + "\":";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    item_prefix();
    out_ += "\"" + escape(v) + "\"";
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    item_prefix();
    out_ += real(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    item_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
    key(k);
    return value(v);
}

JsonWriter& JsonWriter::field(const std::string& k, const char* v) {
    return field(k, std::string(v));
}

JsonWriter& JsonWriter::field(const std::string& k, double v) {
    key(k);
    return value(v);
}

JsonWriter& JsonWriter::field(const std::string& k, bool v) {
    key(k);
    item_prefix();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, std::int64_t v) {
    key(k);
    return value(v);
}

JsonWriter& JsonWriter::field(const std::string& k, std::uint64_t v) {
    key(k);
    item_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, int v) {
    return field(k, static_cast<std::int64_t>(v));
}

std::string JsonWriter::escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string JsonWriter::real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_params(JsonWriter& w, const ModelParams& params,
                  const std::string& pattern_name) {
    w.key("params").begin_object();
    w.field("ell", params.ell);
    w.field("eps", params.eps);
    w.field("k", params.k);
    w.field("n", params.n);
    w.field("p", params.p());
    if (params.forced_p) w.field("p_forced", *params.forced_p);
    if (!pattern_name.empty()) w.field("pattern", pattern_name);
    w.field("unsafe", params.unsafe);
    w.end_object();
}

void write_estimate_fields(JsonWriter& w, const Estimate& est) {
    w.field("mean", est.mean);
    w.field("variance", est.variance);
    w.field("standard_error", est.standard_error);
    w.field("bound_value", est.bound_value);
    w.field("bound_kind", to_string(est.bound_kind));
    w.field("verdict", to_string(est.verdict));
}

void write_mapping(JsonWriter& w, const std::string& key, const VertexMapping& m) {
    w.begin_array(key);
    for (int x : m.image) w.value(static_cast<std::int64_t>(x));
    w.end_array();
}

void write_codomain(JsonWriter& w, const Digraph& c) {
    w.key("codomain").begin_object();
    w.field("order", c.order());
    w.begin_array("arcs");
    for (const Arc& a : c.arcs()) {
        w.begin_array();
        w.value(static_cast<std::int64_t>(a.from));
        w.value(static_cast<std::int64_t>(a.to));
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

} // namespace

std::string estimate_report(const ReportMeta& meta, const Estimate& est,
                            double asymptotic_log) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", meta.operation);
    if (meta.params) write_params(w, *meta.params, meta.pattern_name);
    w.field("trials", meta.trials);
    if (meta.params) w.field("seed", meta.params->seed);
    write_estimate_fields(w, est);
    w.field("asymptotic_log", asymptotic_log);
    w.end_object();
    return w.str() + "\n";
}

std::string good_arc_load_report(const ReportMeta& meta,
                                 const GoodArcLoadResult& result) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", meta.operation);
    if (meta.params) write_params(w, *meta.params, meta.pattern_name);
    w.field("trials", meta.trials);
    if (meta.params) w.field("seed", meta.params->seed);
    write_estimate_fields(w, result.min_load);
    w.field("p_load_at_least_n", result.p_load_at_least_n);
    w.begin_array("per_arc");
    for (const auto& als : result.per_arc) {
        w.begin_object();
        w.field("arc_from", als.good_arc.from);
        w.field("arc_to", als.good_arc.to);
        w.field("slots", als.slots);
        write_estimate_fields(w, als.estimate);
        w.key("distribution").begin_object();
        w.field("points", als.distribution.points);
        w.field("max_abs_dev", als.distribution.max_abs_dev);
        w.field("max_sigma", als.distribution.max_sigma);
        w.field("ok", als.distribution.ok);
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string zu_report(const ReportMeta& meta, const ZuResult& result, int tau,
                      int u_size) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", meta.operation);
    if (meta.params) write_params(w, *meta.params, meta.pattern_name);
    w.field("tau", tau);
    w.field("u_size", u_size);
    w.field("tau_warning", result.tau_warning);
    w.field("trials", meta.trials);
    if (meta.params) w.field("seed", meta.params->seed);
    w.key("cycle_count").begin_object();
    write_estimate_fields(w, result.cycle_count.estimate);
    w.field("asymptotic_log", result.cycle_count.asymptotic_log);
    w.end_object();
    w.key("acyclic").begin_object();
    write_estimate_fields(w, result.acyclic.estimate);
    w.field("asymptotic_log", result.acyclic.asymptotic_log);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string chernoff_report(const ChernoffRow& row) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", "chernoff");
    w.field("m", static_cast<std::int64_t>(row.m));
    w.field("prob", row.prob);
    w.field("gamma", row.gamma);
    w.field("exact_tail", row.exact_tail());
    w.field("log_exact_tail", row.log_exact_tail);
    w.field("bound", row.bound());
    w.field("log_bound", row.log_bound);
    w.field("holds", row.holds);
    w.end_object();
    return w.str() + "\n";
}

std::string bound_table_report(const BoundTable& table) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", "eval-bounds");
    w.begin_array("rows");
    for (const auto& row : table.rows) {
        w.begin_object();
        w.field("name", row.name);
        w.field("inputs", row.inputs);
        w.field("log_value", row.log_value);
        w.field("value", row.value);
        if (!row.note.empty()) w.field("note", row.note);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string verification_report_json(const VerificationReport& report) {
    JsonWriter w;
    w.begin_object();
    w.field("operation", "verify-theorem1");
    w.field("girth_ok", report.girth_ok);
    w.field("psi_ok", report.psi_ok);
    w.begin_array("part_ii");
    for (const auto& e : report.part_ii) {
        w.begin_object();
        write_codomain(w, e.codomain);
        w.field("hom_from_pattern", e.hom_from_pattern);
        w.field("hom_from_dstar", e.hom_from_dstar);
        w.field("agree", e.agree);
        w.field("status", to_string(e.status));
        if (e.witness) write_mapping(w, "witness", *e.witness);
        w.end_object();
    }
    w.end_array();
    w.begin_array("part_iii");
    for (const auto& e : report.part_iii) {
        w.begin_object();
        write_codomain(w, e.codomain);
        w.field("colourings_checked", e.colourings_checked);
        w.field("status", to_string(e.status));
        if (e.witness_phi) write_mapping(w, "witness_phi", *e.witness_phi);
        if (e.witness_f) write_mapping(w, "witness_f", *e.witness_f);
        if (!e.detail.empty()) w.field("detail", e.detail);
        w.end_object();
    }
    w.end_array();
    w.field("all_verified", report.all_verified());
    w.end_object();
    return w.str() + "\n";
}

std::string raw_csv(const std::vector<std::uint64_t>& raw) {
    std::ostringstream out;
    out << "trial,count\n";
    for (std::size_t t = 0; t < raw.size(); ++t) out << t << "," << raw[t] << "\n";
    return out.str();
}

std::string raw_csv_columns(const std::vector<std::string>& columns,
                            const std::vector<std::vector<std::uint64_t>>& rows) {
    std::ostringstream out;
    out << "trial";
    for (const auto& c : columns) out << "," << c;
    out << "\n";
    for (std::size_t t = 0; t < rows.size(); ++t) {
        out << t;
        for (std::uint64_t v : rows[t]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

} // namespace girthforge
