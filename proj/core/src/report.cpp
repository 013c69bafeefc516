#include "cmdegkit/report.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace cmdegkit {
namespace {

using ojson = nlohmann::ordered_json;

const char* verdict_str(bool pass) { return pass ? "pass" : "fail"; }

ojson grid_json(const GridSpec& g) {
    ojson j;
    j["min"] = g.min;
    j["max"] = g.max;
    j["points"] = g.points;
    j["scale"] = g.scale;
    return j;
}

ojson degree_json(const DegreeEstimate& est) {
    ojson j;
    j["schema"] = 1;
    j["kind"] = "degree";
    j["lo"] = est.lo;
    j["hi"] = est.hi;
    j["order"] = est.order;
    j["grid"] = grid_json(est.grid_spec);
    j["iterations"] = est.iterations;
    return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string grid_comment(const GridSpec& g) {
    return "# grid=" + format_double(g.min) + ".." + format_double(g.max) +
           " points=" + std::to_string(g.points) + " scale=" + g.scale + "\n";
}

} // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json")
        return OutputFormat::json;
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "text")
        return OutputFormat::text;
    throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string render(const CMReport& rep, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "cm";
        j["function"] = rep.fn_id;
        j["alpha"] = rep.alpha;
        j["order"] = rep.order;
        j["grid"] = grid_json(rep.grid);
        j["verdict"] = verdict_str(rep.verdict);
        ojson ws = ojson::array();
        for (const auto& w : rep.witnesses) {
            ojson e;
            e["x"] = w.x;
            e["k"] = w.k;
            e["value"] = w.value;
            ws.push_back(e);
        }
        j["witnesses"] = ws;
        j["tolerance"] = rep.tolerance;
        return dump(j);
    }
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "# function=" << rep.fn_id
            << " alpha=" << format_double(rep.alpha)
            << " order=" << rep.order
            << " verdict=" << verdict_str(rep.verdict)
            << " tolerance=" << format_double(rep.tolerance) << "\n"
            << grid_comment(rep.grid) << "x,k,value\n";
        for (const auto& w : rep.witnesses)
            out << format_double(w.x) << ',' << w.k << ','
                << format_double(w.value) << "\n";
        return out.str();
    }
    std::ostringstream out;
    out << "function " << rep.fn_id << ", weight " << format_double(rep.alpha)
        << ", orders 0.." << rep.order << ": " << verdict_str(rep.verdict)
        << "\n";
    if (!rep.witnesses.empty()) {
        out << "violations (" << rep.witnesses.size() << "):\n";
        for (const auto& w : rep.witnesses)
            out << "  x=" << format_double(w.x) << " k=" << w.k
                << " value=" << format_double(w.value) << "\n";
    }
    return out.str();
}

std::string render(const DegreeEstimate& est, OutputFormat fmt) {
    if (fmt == OutputFormat::json)
        return dump(degree_json(est));
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "lo,hi,order,iterations\n"
            << format_double(est.lo) << ',' << format_double(est.hi) << ','
            << est.order << ',' << est.iterations << "\n";
        return out.str();
    }
    std::ostringstream out;
    out << "degree bracket [" << format_double(est.lo) << ", "
        << format_double(est.hi) << "] at order " << est.order << " after "
        << est.iterations << " bisections\n";
    return out.str();
}

std::string render(const BoundReport& rep, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "bound";
        j["bound_id"] = rep.bound_id;
        j["grid"] = grid_json(rep.grid);
        j["min_margin"] = rep.min_margin;
        j["verdict"] = verdict_str(rep.verdict);
        ojson ws = ojson::array();
        for (const auto& w : rep.witnesses) {
            ojson e;
            e["x"] = w.x;
            e["lhs"] = w.lhs;
            e["rhs"] = w.rhs;
            ws.push_back(e);
        }
        j["witnesses"] = ws;
        return dump(j);
    }
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "# bound=" << rep.bound_id
            << " min_margin=" << format_double(rep.min_margin)
            << " verdict=" << verdict_str(rep.verdict) << "\n"
            << grid_comment(rep.grid) << "x,lhs,rhs\n";
        for (const auto& w : rep.witnesses)
            out << format_double(w.x) << ',' << format_double(w.lhs) << ','
                << format_double(w.rhs) << "\n";
        return out.str();
    }
    std::ostringstream out;
    out << "bound " << rep.bound_id << ": " << verdict_str(rep.verdict)
        << ", min margin " << format_double(rep.min_margin) << "\n";
    for (const auto& w : rep.witnesses)
        out << "  x=" << format_double(w.x) << " lhs=" << format_double(w.lhs)
            << " rhs=" << format_double(w.rhs) << "\n";
    return out.str();
}

std::string render(const SeriesTable& table, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "series";
        j["k_min"] = table.k_min;
        j["k_max"] = table.k_max;
        ojson rows = ojson::array();
        for (size_t i = 0; i < table.q_values.size(); ++i) {
            ojson e;
            e["k"] = table.k_min + int(i);
            e["Q"] = table.q_values[i].str();
            e["positive"] = table.q_values[i] > 0;
            rows.push_back(e);
        }
        j["rows"] = rows;
        j["all_positive"] = table.all_positive;
        return dump(j);
    }
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "k,Q,positive\n";
        for (size_t i = 0; i < table.q_values.size(); ++i)
            out << (table.k_min + int(i)) << ',' << table.q_values[i].str()
                << ',' << (table.q_values[i] > 0 ? "true" : "false") << "\n";
        return out.str();
    }
    std::ostringstream out;
    out << "coefficient table k=" << table.k_min << ".." << table.k_max
        << (table.all_positive ? " (all positive)" : " (sign change!)")
        << "\n";
    for (size_t i = 0; i < table.q_values.size(); ++i)
        out << "  Q(" << (table.k_min + int(i))
            << ") = " << table.q_values[i].str() << "\n";
    return out.str();
}

std::string render(const std::vector<KernelSample>& rows, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "kernel";
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            ojson e;
            e["t"] = r.t;
            e["sigma"] = r.sigma;
            e["d1"] = r.dsigma[0];
            e["d2"] = r.dsigma[1];
            e["d3"] = r.dsigma[2];
            e["d4"] = r.dsigma[3];
            e["q4"] = r.q4;
            e["logconc"] = r.logconc;
            arr.push_back(e);
        }
        j["rows"] = arr;
        return dump(j);
    }
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "t,sigma,d1,d2,d3,d4,q4,logconc\n";
        for (const auto& r : rows)
            out << format_double(r.t) << ',' << format_double(r.sigma) << ','
                << format_double(r.dsigma[0]) << ','
                << format_double(r.dsigma[1]) << ','
                << format_double(r.dsigma[2]) << ','
                << format_double(r.dsigma[3]) << ',' << format_double(r.q4)
                << ',' << format_double(r.logconc) << "\n";
        return out.str();
    }
    for (const auto& r : rows)
        out << "t=" << format_double(r.t) << " sigma=" << format_double(r.sigma)
            << " q4=" << format_double(r.q4)
            << " logconc=" << format_double(r.logconc) << "\n";
    return out.str();
}

std::string render(const std::vector<LaplaceCheck>& checks,
                   OutputFormat fmt) {
    bool all = true;
    for (const auto& c : checks)
        all = all && c.pass;
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "laplace";
        ojson arr = ojson::array();
        for (const auto& c : checks) {
            ojson e;
            e["x"] = c.x;
            e["lhs"] = c.lhs;
            e["rhs"] = c.rhs;
            e["rel_err"] = c.rel_err;
            e["tol"] = c.tol;
            e["pass"] = c.pass;
            e["horizon_warning"] = c.horizon_warning;
            arr.push_back(e);
        }
        j["checks"] = arr;
        j["verdict"] = verdict_str(all);
        return dump(j);
    }
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "x,lhs,rhs,rel_err,tol,pass,horizon_warning\n";
        for (const auto& c : checks)
            out << format_double(c.x) << ',' << format_double(c.lhs) << ','
                << format_double(c.rhs) << ',' << format_double(c.rel_err)
                << ',' << format_double(c.tol) << ','
                << (c.pass ? "true" : "false") << ','
                << (c.horizon_warning ? "true" : "false") << "\n";
        return out.str();
    }
    for (const auto& c : checks)
        out << "x=" << format_double(c.x) << ": lhs=" << format_double(c.lhs)
            << " rhs=" << format_double(c.rhs)
            << " rel_err=" << format_double(c.rel_err) << " ["
            << verdict_str(c.pass) << (c.horizon_warning ? ", horizon!" : "")
            << "]\n";
    out << "overall: " << verdict_str(all) << "\n";
    return out.str();
}

std::string render(const ConjectureProbe& probe, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "probe";
        auto ratio = [](const RatioScan& r) {
            ojson e;
            e["min"] = r.min;
            e["argmin"] = r.argmin;
            e["max"] = r.max;
            e["argmax"] = r.argmax;
            return e;
        };
        j["lower_gap"] = degree_json(probe.lower_gap);
        j["lower_gap"].erase("schema");
        j["lower_gap"].erase("kind");
        j["upper_gap"] = degree_json(probe.upper_gap);
        j["upper_gap"].erase("schema");
        j["upper_gap"].erase("kind");
        j["lower_ratio"] = ratio(probe.lower_ratio);
        j["upper_ratio"] = ratio(probe.upper_ratio);
        j["notes"] = probe.notes;
        return dump(j);
    }
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "gap,lo,hi,order,iterations,ratio_min,ratio_argmin,"
               "ratio_max,ratio_argmax\n";
        out << "lower," << format_double(probe.lower_gap.lo) << ','
            << format_double(probe.lower_gap.hi) << ','
            << probe.lower_gap.order << ',' << probe.lower_gap.iterations
            << ',' << format_double(probe.lower_ratio.min) << ','
            << format_double(probe.lower_ratio.argmin) << ','
            << format_double(probe.lower_ratio.max) << ','
            << format_double(probe.lower_ratio.argmax) << "\n";
        out << "upper," << format_double(probe.upper_gap.lo) << ','
            << format_double(probe.upper_gap.hi) << ','
            << probe.upper_gap.order << ',' << probe.upper_gap.iterations
            << ',' << format_double(probe.upper_ratio.min) << ','
            << format_double(probe.upper_ratio.argmin) << ','
            << format_double(probe.upper_ratio.max) << ','
            << format_double(probe.upper_ratio.argmax) << "\n";
        return out.str();
    }
    return probe.notes + "\n";
}

std::string render(const SuiteResult& suite, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "suite";
        ojson arr = ojson::array();
        for (const auto& c : suite.criteria) {
            ojson e;
            e["index"] = c.index;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["detail"] = c.detail;
            arr.push_back(e);
        }
        j["criteria"] = arr;
        j["all_pass"] = suite.all_pass;
        return dump(j);
    }
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "index,name,pass,detail\n";
        for (const auto& c : suite.criteria)
            out << c.index << ',' << csv_escape(c.name) << ','
                << (c.pass ? "true" : "false") << ',' << csv_escape(c.detail)
                << "\n";
        return out.str();
    }
    for (const auto& c : suite.criteria)
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.index << " " << c.name
            << ": " << c.detail << "\n";
    out << "suite: " << verdict_str(suite.all_pass) << "\n";
    return out.str();
}

std::string render_equivalence(const std::string& fn_id,
                               const EquivalenceReport& rep,
                               OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "strongcm";
        j["function"] = fn_id;
        j["strong_verdict"] = verdict_str(rep.strong_verdict);
        j["xcm_verdict"] = verdict_str(rep.xcm_verdict);
        j["agree"] = rep.agree;
        return dump(j);
    }
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "function,strong_verdict,xcm_verdict,agree\n"
            << csv_escape(fn_id) << ',' << verdict_str(rep.strong_verdict)
            << ',' << verdict_str(rep.xcm_verdict) << ','
            << (rep.agree ? "true" : "false") << "\n";
        return out.str();
    }
    out << fn_id << ": strong " << verdict_str(rep.strong_verdict)
        << ", weighted " << verdict_str(rep.xcm_verdict)
        << (rep.agree ? " (agree)" : " (DISAGREE)") << "\n";
    return out.str();
}

std::string render_eval(const std::string& fn_id, double x, double value,
                        OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        ojson j;
        j["schema"] = 1;
        j["kind"] = "eval";
        j["function"] = fn_id;
        j["x"] = x;
        j["value"] = value;
        return dump(j);
    }
    if (fmt == OutputFormat::csv) {
        std::ostringstream out;
        out << "function,x,value\n"
            << csv_escape(fn_id) << ',' << format_double(x) << ','
            << format_double(value) << "\n";
        return out.str();
    }
    return fn_id + "(" + format_double(x) + ") = " + format_double(value) +
           "\n";
}

} // namespace cmdegkit
