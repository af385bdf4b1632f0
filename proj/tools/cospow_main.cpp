#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cospow/approximants.hpp"
#include "cospow/bounds.hpp"
#include "cospow/curve.hpp"
#include "cospow/errors.hpp"
#include "cospow/precision.hpp"
#include "cospow/scanner.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchema = "cospow/1";

enum class OutFormat { csv, json, plot_data };

struct OutputSpec {
    OutFormat format = OutFormat::csv;
    std::string path = "-";
};

OutputSpec parse_out(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw cospow::DomainError("--out must be format:path (e.g. csv:-)");
    std::string fmt = spec.substr(0, colon);
    OutputSpec out;
    out.path = spec.substr(colon + 1);
    if (fmt == "csv")
        out.format = OutFormat::csv;
    else if (fmt == "json")
        out.format = OutFormat::json;
    else if (fmt == "plot-data")
        out.format = OutFormat::plot_data;
    else
        throw cospow::DomainError("unknown output format '" + fmt + "'");
    if (out.path.empty()) throw cospow::DomainError("--out path must not be empty");
    return out;
}

class Sink {
public:
    explicit Sink(const OutputSpec& spec) : spec_(spec) {
        if (spec.path != "-") {
            file_.open(spec.path, std::ios::binary);
            if (!file_) throw cospow::DomainError("cannot open output file " + spec.path);
        }
    }
    std::ostream& stream() { return spec_.path == "-" ? std::cout : file_; }
    OutFormat format() const { return spec_.format; }

private:
    OutputSpec spec_;
    std::ofstream file_;
};

int g_digits = 0;  // 0 = shortest round-trip

std::string fmt_double(double v) {
    char buf[64];
    if (g_digits > 0) {
        std::snprintf(buf, sizeof buf, "%.*g", g_digits, v);
        return buf;
    }
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Rows of preformatted cells, emitted as CSV (header + comma-separated,
// LF) or gnuplot plot-data (# comment header, whitespace-separated).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> trailer_comments;

    void emit(Sink& sink) const {
        auto& os = sink.stream();
        if (sink.format() == OutFormat::csv) {
            for (std::size_t i = 0; i < header.size(); ++i)
                os << (i ? "," : "") << header[i];
            os << "\n";
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? "," : "") << row[i];
                os << "\n";
            }
            for (const auto& c : trailer_comments) std::cerr << "# " << c << "\n";
        } else {
            os << "#";
            for (const auto& h : header) os << " " << h;
            os << "\n";
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    os << (i ? " " : "") << row[i];
                os << "\n";
            }
            for (const auto& c : trailer_comments) os << "# " << c << "\n";
        }
    }
};

void emit_json(Sink& sink, json doc) {
    doc["schema"] = kSchema;
    sink.stream() << doc.dump(2) << "\n";
}

void apply_env_precision_cap() {
    if (const char* env = std::getenv("COSPOW_MAX_PREC_BITS")) {
        long bits = std::strtol(env, nullptr, 10);
        cospow::set_max_precision_bits(bits);
    }
}

std::vector<cospow::Point> subsequence_points(long long p, long long d, double gamma,
                                              long long k0, long long count) {
    if (p < 1) throw cospow::DomainError("p must be >= 1");
    if (count < 1) throw cospow::DomainError("count must be >= 1");
    if (k0 < 1) throw cospow::DomainError("k0 must be >= 1");
    std::vector<cospow::Point> pts;
    pts.reserve(count - k0 + 1);
    for (long long k = k0; k <= count; ++k) {
        long long n = p * k + d;
        pts.push_back({static_cast<double>(k), cospow::seq_value(n, gamma).value});
    }
    return pts;
}

// ---- subcommands -------------------------------------------------------

int cmd_scan(long long start, long long end, double gamma, std::optional<double> alpha,
             unsigned parallel, std::optional<long> prec_bits, const std::string& out) {
    cospow::ScanConfig cfg;
    cfg.start = start;
    cfg.end = end;
    cfg.gamma = gamma;
    cfg.alpha = alpha;
    cfg.threads = parallel;
    cfg.min_bits = prec_bits;
    auto values = cospow::scan_range(cfg);

    Sink sink(parse_out(out));
    if (sink.format() == OutFormat::json) {
        json rows = json::array();
        for (const auto& v : values) rows.push_back({{"n", v.n}, {"value", v.value}});
        emit_json(sink, {{"command", "scan"}, {"gamma", gamma}, {"rows", std::move(rows)}});
    } else {
        Table t;
        t.header = {"n", "value"};
        for (const auto& v : values) t.rows.push_back({std::to_string(v.n), fmt_double(v.value)});
        t.emit(sink);
    }
    return 0;
}

int cmd_convergents(long long max_q, bool semiconvergents, const std::string& out) {
    auto approx = cospow::approximations(max_q, semiconvergents);
    Sink sink(parse_out(out));
    auto kind_name = [](cospow::ApproxKind k) {
        return k == cospow::ApproxKind::convergent ? "convergent" : "semiconvergent";
    };
    if (sink.format() == OutFormat::json) {
        json rows = json::array();
        for (const auto& a : approx) {
            json row = {{"p", a.p},     {"q", a.q},        {"kind", kind_name(a.kind)},
                        {"err", a.err}, {"residual", a.residual}};
            if (a.mu_eff) row["mu_eff"] = *a.mu_eff;
            rows.push_back(std::move(row));
        }
        emit_json(sink, {{"command", "convergents"}, {"rows", std::move(rows)}});
    } else {
        Table t;
        t.header = {"p", "q", "kind", "err", "residual", "mu_eff"};
        for (const auto& a : approx)
            t.rows.push_back({std::to_string(a.p), std::to_string(a.q), kind_name(a.kind),
                              fmt_double(a.err), fmt_double(a.residual),
                              a.mu_eff ? fmt_double(*a.mu_eff) : ""});
        t.emit(sink);
    }
    return 0;
}

int cmd_peaks(long long start, long long end, double gamma, double alpha, long long gap,
              unsigned parallel, const std::string& out) {
    cospow::ScanConfig cfg;
    cfg.start = start;
    cfg.end = end;
    cfg.gamma = gamma;
    cfg.alpha = alpha;
    cfg.threads = parallel;
    auto values = cospow::scan_range(cfg);
    auto groups = cospow::detect_peaks(values, alpha, gap);

    Sink sink(parse_out(out));
    if (sink.format() == OutFormat::json) {
        json out_groups = json::array();
        for (const auto& g : groups) {
            json jg = {{"indices", g.indices}, {"max_value", g.max_value}};
            if (g.progression) {
                jg["p"] = g.progression->p;
                jg["d"] = g.progression->d;
            } else {
                jg["degenerate"] = true;
            }
            out_groups.push_back(std::move(jg));
        }
        emit_json(sink, {{"command", "peaks"}, {"groups", std::move(out_groups)}});
    } else {
        Table t;
        t.header = {"group", "first", "last", "members", "p", "d", "max_value"};
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const auto& g = groups[i];
            t.rows.push_back({std::to_string(i), std::to_string(g.indices.front()),
                              std::to_string(g.indices.back()),
                              std::to_string(g.indices.size()),
                              g.progression ? std::to_string(g.progression->p) : "degenerate",
                              g.progression ? std::to_string(g.progression->d) : "degenerate",
                              fmt_double(g.max_value)});
        }
        t.emit(sink);
    }
    return 0;
}

int cmd_subseq(long long p, long long d, double gamma, long long count,
               std::optional<double> alpha, const std::string& out) {
    auto prog = cospow::make_progression(p, d, gamma);
    if (count < 1) throw cospow::DomainError("count must be >= 1");

    std::optional<cospow::PersistenceReport> report;
    std::vector<double> values;
    if (alpha) {
        report = cospow::classify_persistence(prog, *alpha, count);
        values = report->values;
    } else {
        values.reserve(count);
        for (long long k = 1; k <= count; ++k)
            values.push_back(cospow::seq_value(p * k + d, gamma).value);
    }

    Sink sink(parse_out(out));
    if (sink.format() == OutFormat::json) {
        json rows = json::array();
        for (long long k = 1; k <= count; ++k)
            rows.push_back({{"k", k}, {"n", p * k + d}, {"value", values[k - 1]}});
        json doc = {{"command", "subseq"}, {"rows", std::move(rows)}};
        if (report) {
            json jr = {{"horizon", report->horizon}, {"holds_to", report->holds_to}};
            if (report->first_failure) jr["first_failure"] = *report->first_failure;
            doc["persistence"] = std::move(jr);
        }
        emit_json(sink, doc);
    } else {
        Table t;
        t.header = {"k", "n", "value"};
        for (long long k = 1; k <= count; ++k)
            t.rows.push_back({std::to_string(k), std::to_string(p * k + d),
                              fmt_double(values[k - 1])});
        if (report) {
            t.trailer_comments.push_back("holds_to=" + std::to_string(report->holds_to));
            if (report->first_failure)
                t.trailer_comments.push_back("first_failure=" +
                                             std::to_string(*report->first_failure));
        }
        t.emit(sink);
    }
    return 0;
}

int cmd_bounds(long series_order, const std::string& moment, const std::string& out) {
    auto bound = cospow::exp_pi_sq_over_2_bound(64);
    auto series = cospow::truncated_limsup_series(series_order);

    std::optional<std::pair<long, long>> moment_req;
    if (!moment.empty()) {
        auto comma = moment.find(',');
        if (comma == std::string::npos)
            throw cospow::DomainError("--moment expects m,order");
        moment_req = {std::stol(moment.substr(0, comma)), std::stol(moment.substr(comma + 1))};
    }

    Sink sink(parse_out(out));
    std::string sign = series.last_term_sign == cospow::TermSign::negative ? "negative" : "positive";
    if (sink.format() == OutFormat::json) {
        json doc = {{"command", "bounds"},
                    {"exp_pi_sq_over_2", bound.to_double()},
                    {"series",
                     {{"max_order", series.max_order},
                      {"partial_sum", series.partial_sum},
                      {"last_term_sign", sign},
                      {"valid_lower_bound", series.valid_lower_bound}}}};
        if (moment_req) {
            auto [m, order] = *moment_req;
            mpz_class exact = cospow::central_moment_bruteforce(m, order);
            json jm = {{"m", m}, {"order", order}, {"exact", exact.get_str()}};
            if (order == 2 || order == 4 || order == 6)
                jm["closed_form_match"] = exact == cospow::moment_closed_form(m, order);
            doc["moment"] = std::move(jm);
        }
        emit_json(sink, doc);
    } else {
        Table t;
        t.header = {"quantity", "value"};
        t.rows.push_back({"exp_pi_sq_over_2", fmt_double(bound.to_double())});
        t.rows.push_back({"series_partial_sum", fmt_double(series.partial_sum)});
        t.rows.push_back({"series_max_order", std::to_string(series.max_order)});
        t.rows.push_back({"series_last_term_sign", sign});
        t.rows.push_back({"series_valid_lower_bound", series.valid_lower_bound ? "true" : "false"});
        if (moment_req) {
            auto [m, order] = *moment_req;
            mpz_class exact = cospow::central_moment_bruteforce(m, order);
            t.rows.push_back({"moment_exact", exact.get_str()});
            if (order == 2 || order == 4 || order == 6)
                t.rows.push_back({"moment_closed_form_match",
                                  exact == cospow::moment_closed_form(m, order) ? "true" : "false"});
        }
        t.emit(sink);
    }
    return 0;
}

int cmd_fit(long long p, long long d, double gamma, long long count, long long k0,
            const std::string& out) {
    auto pts = subsequence_points(p, d, gamma, k0, count);
    auto fit = cospow::fit_gaussian(pts);

    Sink sink(parse_out(out));
    if (sink.format() == OutFormat::json) {
        emit_json(sink, {{"command", "fit"},
                         {"amplitude", fit.amplitude},
                         {"mean", fit.mean},
                         {"sigma", fit.sigma},
                         {"r_squared", fit.r_squared},
                         {"converged", fit.converged}});
    } else {
        Table t;
        t.header = {"parameter", "value"};
        t.rows.push_back({"amplitude", fmt_double(fit.amplitude)});
        t.rows.push_back({"mean", fmt_double(fit.mean)});
        t.rows.push_back({"sigma", fmt_double(fit.sigma)});
        t.rows.push_back({"r_squared", fmt_double(fit.r_squared)});
        t.rows.push_back({"converged", fit.converged ? "true" : "false"});
        t.emit(sink);
    }
    return 0;
}

int cmd_curve(long long p, long long d, double gamma, long long count, long long samples,
              const std::string& out) {
    auto prog = cospow::make_progression(p, d, gamma);
    if (count < 1) throw cospow::DomainError("count must be >= 1");
    if (samples < 2) throw cospow::DomainError("samples must be >= 2");

    double x_lo = static_cast<double>(p + d);
    double x_hi = static_cast<double>(p * count + d);
    std::vector<cospow::Point> curve;
    curve.reserve(samples);
    for (long long i = 0; i < samples; ++i) {
        double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        curve.push_back({x, cospow::eval_curve(prog, x)});
    }
    std::vector<cospow::Point> points;
    points.reserve(count);
    for (long long k = 1; k <= count; ++k) {
        long long n = p * k + d;
        points.push_back({static_cast<double>(n), cospow::seq_value(n, gamma).value});
    }

    Sink sink(parse_out(out));
    if (sink.format() == OutFormat::json) {
        json jc = json::array(), jp = json::array();
        for (const auto& pt : curve) jc.push_back({pt.x, pt.y});
        for (const auto& pt : points) jp.push_back({pt.x, pt.y});
        emit_json(sink, {{"command", "curve"}, {"curve", std::move(jc)}, {"points", std::move(jp)}});
    } else if (sink.format() == OutFormat::csv) {
        Table t;
        t.header = {"kind", "x", "y"};
        for (const auto& pt : curve) t.rows.push_back({"curve", fmt_double(pt.x), fmt_double(pt.y)});
        for (const auto& pt : points) t.rows.push_back({"point", fmt_double(pt.x), fmt_double(pt.y)});
        t.emit(sink);
    } else {
        auto& os = sink.stream();
        os << "# curve x f(x)\n";
        for (const auto& pt : curve) os << fmt_double(pt.x) << " " << fmt_double(pt.y) << "\n";
        os << "\n\n# points n value\n";
        for (const auto& pt : points) os << fmt_double(pt.x) << " " << fmt_double(pt.y) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cospow: the sequence |cos n|^(n^gamma), its persistent subsequences, "
                 "rational approximants of pi, and the associated analytic bounds"};
    app.require_subcommand(1);

    // scan
    long long start = 1, end = 1;
    double gamma = 1.0;
    double alpha_v = 0.0;
    unsigned parallel = 0;
    long prec_bits_v = 0;
    std::string out = "csv:-";
    auto* scan = app.add_subcommand("scan", "evaluate a_n over an index range");
    scan->add_option("--gamma", gamma)->required();
    scan->add_option("--start", start)->required();
    scan->add_option("--end", end)->required();
    auto* scan_alpha = scan->add_option("--alpha", alpha_v, "keep only values > alpha");
    scan->add_option("--parallel", parallel, "worker threads (0 = auto)");
    auto* scan_prec = scan->add_option("--prec-bits", prec_bits_v, "minimum precision bits");
    scan->add_option("--out", out);
    scan->add_option("--digits", g_digits);

    // convergents
    long long max_q = 1;
    bool semis = false;
    auto* conv = app.add_subcommand("convergents", "rational approximants of pi");
    conv->add_option("--max-q", max_q)->required();
    conv->add_flag("--semiconvergents", semis);
    conv->add_option("--out", out);
    conv->add_option("--digits", g_digits);

    // peaks
    long long gap = 355;
    auto* peaks = app.add_subcommand("peaks", "detect and group above-threshold peaks");
    peaks->add_option("--gamma", gamma)->required();
    peaks->add_option("--start", start)->required();
    peaks->add_option("--end", end)->required();
    peaks->add_option("--alpha", alpha_v)->required();
    peaks->add_option("--gap", gap, "cluster gap (default 355)");
    peaks->add_option("--parallel", parallel);
    auto* peaks_out = peaks->add_option("--out", out);
    peaks->add_option("--digits", g_digits);

    // subseq
    long long p = 1, d = 0, count = 1;
    auto* subseq = app.add_subcommand("subseq", "walk an arithmetic progression");
    subseq->add_option("--p", p)->required();
    subseq->add_option("--d", d);
    subseq->add_option("--gamma", gamma)->required();
    subseq->add_option("--count", count)->required();
    auto* subseq_alpha = subseq->add_option("--alpha", alpha_v, "persistence threshold");
    subseq->add_option("--out", out);
    subseq->add_option("--digits", g_digits);

    // bounds
    long series_order = 16;
    std::string moment;
    auto* bounds = app.add_subcommand("bounds", "analytic bounds and moment identities");
    bounds->add_option("--series-order", series_order);
    bounds->add_option("--moment", moment, "m,order for an exact moment value");
    bounds->add_option("--out", out);
    bounds->add_option("--digits", g_digits);

    // fit
    long long k0 = 1;
    auto* fit = app.add_subcommand("fit", "Gaussian fit of a subsequence peak (k-coordinate)");
    fit->add_option("--p", p)->required();
    fit->add_option("--d", d);
    fit->add_option("--gamma", gamma)->required();
    fit->add_option("--count", count)->required();
    fit->add_option("--k0", k0, "first k to include (default 1)");
    auto* fit_out = fit->add_option("--out", out);
    fit->add_option("--digits", g_digits);

    // curve
    long long samples = 200;
    auto* curve = app.add_subcommand("curve", "envelope curve samples with discrete overlay");
    curve->add_option("--p", p)->required();
    curve->add_option("--d", d);
    curve->add_option("--gamma", gamma)->required();
    curve->add_option("--count", count)->required();
    curve->add_option("--samples", samples);
    curve->add_option("--out", out);
    curve->add_option("--digits", g_digits);

    try {
        app.parse(argc, argv);
        apply_env_precision_cap();

        if (scan->parsed())
            return cmd_scan(start, end, gamma,
                            scan_alpha->count() ? std::optional<double>(alpha_v) : std::nullopt,
                            parallel,
                            scan_prec->count() ? std::optional<long>(prec_bits_v) : std::nullopt,
                            out);
        if (conv->parsed()) return cmd_convergents(max_q, semis, out);
        if (peaks->parsed())
            return cmd_peaks(start, end, gamma, alpha_v, gap, parallel,
                             peaks_out->count() ? out : "json:-");
        if (subseq->parsed())
            return cmd_subseq(p, d, gamma, count,
                              subseq_alpha->count() ? std::optional<double>(alpha_v) : std::nullopt,
                              out);
        if (bounds->parsed()) return cmd_bounds(series_order, moment, out);
        if (fit->parsed()) return cmd_fit(p, d, gamma, count, k0, fit_out->count() ? out : "json:-");
        if (curve->parsed()) return cmd_curve(p, d, gamma, count, samples, out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 2;
    } catch (const cospow::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cospow::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cospow::FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
