#include "spectra/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "spectra/lzsm.hpp"
#include "spectra/qd_spectra.hpp"

namespace spectra {

namespace {

using nlohmann::json;

struct ParamSet {
    const std::map<std::string, double>& fixed;
    const std::string& variable;
    double var_value;

    double get(const std::string& name, double fallback) const {
        if (name == variable) return var_value;
        auto it = fixed.find(name);
        return it == fixed.end() ? fallback : it->second;
    }
    double require(const std::string& name) const {
        if (name == variable) return var_value;
        auto it = fixed.find(name);
        if (it == fixed.end())
            throw std::invalid_argument("fixed: missing required parameter '" + name + "'");
        return it->second;
    }
};

const char* target_name(SweepTarget t) {
    switch (t) {
        case SweepTarget::LzsmRate: return "LzsmRate";
        case SweepTarget::QdPower: return "QdPower";
        case SweepTarget::SidebandLines: return "SidebandLines";
        case SweepTarget::CoherentLines: return "CoherentLines";
        case SweepTarget::InversionHarmonics: return "InversionHarmonics";
        case SweepTarget::Mollow: return "Mollow";
        case SweepTarget::FourierBias: return "FourierBias";
        case SweepTarget::FourierAmplitude: return "FourierAmplitude";
        case SweepTarget::FourierDouble: return "FourierDouble";
    }
    throw std::logic_error("target_name: unknown target");
}

SweepTarget target_from_name(const std::string& s) {
    for (SweepTarget t : {SweepTarget::LzsmRate, SweepTarget::QdPower, SweepTarget::SidebandLines,
                          SweepTarget::CoherentLines, SweepTarget::InversionHarmonics,
                          SweepTarget::Mollow, SweepTarget::FourierBias,
                          SweepTarget::FourierAmplitude, SweepTarget::FourierDouble}) {
        if (s == target_name(t)) return t;
    }
    throw std::invalid_argument("target: unknown target '" + s + "'");
}

bool is_line_target(SweepTarget t) {
    return t == SweepTarget::SidebandLines || t == SweepTarget::CoherentLines ||
           t == SweepTarget::InversionHarmonics;
}

std::vector<std::string> allowed_methods(SweepTarget t) {
    switch (t) {
        case SweepTarget::LzsmRate:
            return {"series", "exact", "airy", "airy_asym", "asym", "small_x"};
        case SweepTarget::QdPower:
            return {"series", "exact", "asym"};
        case SweepTarget::SidebandLines:
            return {"exact", "asym"};
        case SweepTarget::CoherentLines:
        case SweepTarget::InversionHarmonics:
        case SweepTarget::FourierAmplitude:
        case SweepTarget::FourierDouble:
            return {"exact"};
        case SweepTarget::Mollow:
            return {"series", "exact"};
        case SweepTarget::FourierBias:
            return {"series", "exact", "quadrature"};
    }
    throw std::logic_error("allowed_methods: unknown target");
}

std::vector<std::string> allowed_variables(SweepTarget t) {
    switch (t) {
        case SweepTarget::LzsmRate: return {"eps", "gamma", "x"};
        case SweepTarget::QdPower: return {"omega", "chi", "gamma", "omega_s"};
        case SweepTarget::SidebandLines:
        case SweepTarget::CoherentLines:
        case SweepTarget::InversionHarmonics: return {"ell", "k"};
        case SweepTarget::Mollow: return {"omega"};
        case SweepTarget::FourierBias: return {"k_E"};
        case SweepTarget::FourierAmplitude: return {"k_x"};
        case SweepTarget::FourierDouble: return {"k_E", "k_A"};
    }
    throw std::logic_error("allowed_variables: unknown target");
}

void validate_spec(const SweepSpec& spec) {
    if (!(spec.start < spec.stop))
        throw std::invalid_argument("start/stop: requires start < stop");
    if (spec.points < 2) throw std::invalid_argument("points: requires points >= 2");
    auto vars = allowed_variables(spec.target);
    if (std::find(vars.begin(), vars.end(), spec.variable) == vars.end())
        throw std::invalid_argument("variable: '" + spec.variable + "' is not sweepable for target " +
                                    target_name(spec.target));
    auto ok = allowed_methods(spec.target);
    for (const auto& m : spec.methods) {
        if (std::find(ok.begin(), ok.end(), m) == ok.end())
            throw std::invalid_argument("methods: '" + m + "' is not valid for target " +
                                        target_name(spec.target));
    }
    if (is_line_target(spec.target)) {
        if (spec.methods.size() > 1)
            throw std::invalid_argument("methods: line-spectrum targets take a single method");
        double s = std::round(spec.start), e = std::round(spec.stop);
        if (s != spec.start || e != spec.stop)
            throw std::invalid_argument("start/stop: line-spectrum index range must be integral");
        if (spec.points != int(e - s) + 1)
            throw std::invalid_argument("points: line-spectrum sweep needs points == stop - start + 1");
    }
}

std::vector<std::string> effective_methods(const SweepSpec& spec) {
    if (!spec.methods.empty()) return spec.methods;
    return {"exact"};
}

DrivenQubit qubit_from(const ParamSet& p) {
    DrivenQubit q;
    q.omega = p.get("omega", 1.0);
    q.delta = p.get("delta", 1.0);
    q.bias = p.require("eps") * q.omega;
    q.gamma2 = p.require("gamma") * q.omega;
    q.amplitude = p.require("x") * q.omega;
    return q;
}

SweepCell eval_cell(const SweepSpec& spec, const std::string& method, const ParamSet& p,
                    std::string& status) {
    SweepCell cell;
    try {
        switch (spec.target) {
            case SweepTarget::LzsmRate: {
                DrivenQubit q = qubit_from(p);
                if (method == "series") {
                    double tol = p.get("rel_tol", 1e-10);
                    cell.value = rate_series(q, tol).value;
                    cell.err = tol * std::abs(cell.value);
                } else if (method == "exact") {
                    cell.value = rate_exact(q).value;
                } else if (method == "airy") {
                    cell.value = rate_airy_approx(q).value;
                } else if (method == "airy_asym") {
                    cell.value = rate_airy_asym(q).value;
                } else if (method == "asym") {
                    cell.value = rate_asym(q).value;
                } else {  // small_x
                    cell.value = rate_small_x(q, int(p.get("m_max", 8.0))).value;
                }
                break;
            }
            case SweepTarget::QdPower: {
                SawDrive d;
                d.omega0 = p.get("omega0", 0.0);
                d.omega_s = p.require("omega_s");
                d.chi = p.require("chi");
                d.gamma = p.require("gamma");
                double omega = p.require("omega");
                if (method == "series") {
                    double tol = p.get("rel_tol", 1e-10);
                    cell.value = power_spectrum_series(d, omega, tol);
                    cell.err = tol * std::abs(cell.value);
                } else if (method == "exact") {
                    cell.value = power_spectrum_exact(d, omega);
                } else {  // asym
                    cell.value = power_spectrum_asym(d, omega);
                }
                break;
            }
            case SweepTarget::Mollow: {
                BichromaticDot dot;
                dot.d11 = p.get("d11", 0.0);
                dot.d22 = p.get("d22", 0.0);
                dot.d12 = p.get("d12", 1.0);
                dot.E1 = p.require("E1");
                dot.E2 = p.require("E2");
                dot.omega1 = p.require("omega1");
                dot.omega2 = p.get("omega2", 0.0);
                dot.omega0 = p.get("omega0", 0.0);
                dot.n = int(p.get("n", 0.0));
                dot.gamma = p.require("gamma");
                dot.deltaS = p.get("deltaS", 0.0);
                dot.sign = int(p.get("sign", 1.0));
                double omega = p.require("omega");
                cell.value = (method == "series") ? mollow_spectrum_series(dot, omega)
                                                  : mollow_spectrum(dot, omega);
                break;
            }
            case SweepTarget::FourierBias: {
                DrivenQubit q;
                q.omega = p.get("omega", 1.0);
                q.delta = p.get("delta", 1.0);
                q.bias = 0.0;
                q.gamma2 = p.require("gamma") * q.omega;
                q.amplitude = p.require("x") * q.omega;
                FourierMethod fm = method == "series" ? FourierMethod::GrafSeries
                                   : method == "quadrature" ? FourierMethod::Quadrature
                                                            : FourierMethod::Closed;
                cell.value = fourier_in_bias(q, p.require("k_E"), fm);
                break;
            }
            case SweepTarget::FourierDouble: {
                DrivenQubit q;
                q.omega = p.get("omega", 1.0);
                q.delta = p.get("delta", 1.0);
                q.gamma2 = p.require("gamma") * q.omega;
                FourierDoubleResult r = fourier_double(q, p.require("k_E"), p.require("k_A"));
                cell.value = r.value;
                if (r.status == SupportStatus::OutsideSupport) status = "outside";
                if (r.status == SupportStatus::Boundary) status = "boundary";
                break;
            }
            default:
                throw std::logic_error("eval_cell: unsupported target");
        }
    } catch (const PoleError&) {
        cell.valid = false;
        cell.value = std::nan("");
        status = "pole";
    } catch (const std::domain_error&) {
        cell.valid = false;
        cell.value = std::nan("");
        if (status == "ok") status = "domain";
    }
    return cell;
}

int worker_count(int rows) {
    int n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("SPECTRA_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument("SPECTRA_THREADS: must be a positive integer");
        n = int(v);
    }
    return std::min(n, rows);
}

SweepTable run_grid_sweep(const SweepSpec& spec) {
    SweepTable table;
    table.variable = spec.variable;
    std::vector<std::string> methods = effective_methods(spec);
    if (spec.target == SweepTarget::FourierAmplitude) {
        table.columns = {"exact_re", "exact_im"};
    } else {
        table.columns = methods;
    }
    table.rows.resize(spec.points);

    const double h = (spec.stop - spec.start) / double(spec.points - 1);
    auto eval_row = [&](int i) {
        SweepRow& row = table.rows[i];
        row.variable = (i == spec.points - 1) ? spec.stop : spec.start + h * double(i);
        row.status = "ok";
        ParamSet p{spec.fixed, spec.variable, row.variable};
        if (spec.target == SweepTarget::FourierAmplitude) {
            DrivenQubit q;
            q.bias = p.require("eps");
            q.gamma2 = p.require("gamma");
            double kx = p.require("k_x");
            try {
                std::complex<double> v = fourier_in_amplitude(q, kx);
                row.cells = {{v.real(), 0.0, true}, {v.imag(), 0.0, true}};
            } catch (const PoleError&) {
                row.cells = {{std::nan(""), 0.0, false}, {std::nan(""), 0.0, false}};
                row.status = "pole";
            }
            return;
        }
        row.cells.reserve(methods.size());
        for (const auto& m : methods) row.cells.push_back(eval_cell(spec, m, p, row.status));
    };

    int workers = worker_count(spec.points);
    if (workers <= 1) {
        for (int i = 0; i < spec.points; ++i) eval_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int i = w; i < spec.points; i += workers) eval_row(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return table;
}

SweepTable run_line_sweep(const SweepSpec& spec) {
    SweepTable table;
    table.line_format = true;
    table.variable = "ell";
    table.columns = {"frequency", "weight"};

    ParamSet p{spec.fixed, std::string("__none__"), 0.0};
    const int lo = int(std::lround(spec.start));
    const int hi = int(std::lround(spec.stop));
    const int m = std::max(std::abs(lo), std::abs(hi));

    auto push = [&](int idx, double freq, double weight) {
        if (idx < lo || idx > hi) return;
        SweepRow row;
        row.variable = double(idx);
        row.cells = {{freq, 0.0, true}, {weight, 0.0, true}};
        table.rows.push_back(std::move(row));
    };

    try {
        if (spec.target == SweepTarget::InversionHarmonics) {
            ModulatedField f;
            f.Omega0 = p.require("Omega0");
            f.omega1 = p.require("omega1");
            f.a = p.require("a");
            f.gamma = p.require("gamma");
            for (const auto& harm : inversion_harmonics(f, m)) {
                push(harm.k, double(harm.k) * f.omega1, harm.beta);
            }
        } else if (spec.target == SweepTarget::CoherentLines) {
            ModulatedField f;
            f.Omega0 = p.require("Omega0");
            f.omega1 = p.require("omega1");
            f.a = p.require("a");
            f.gamma = p.require("gamma");
            double omega_L = p.get("omega_L", 0.0);
            LineSpectrum ls = coherent_lines(f, omega_L, m);
            // lines run from k = +m (lowest frequency) down to k = -m
            for (const auto& line : ls.lines) {
                int k = int(std::lround((omega_L - line.frequency) / f.omega1));
                push(k, line.frequency, line.weight);
            }
        } else {  // SidebandLines
            SawDrive d;
            d.omega0 = p.get("omega0", 0.0);
            d.omega_s = p.require("omega_s");
            d.chi = p.require("chi");
            d.gamma = p.require("gamma");
            LaserCoupling lc;
            lc.omega_L = p.get("omega_L", 0.0);
            lc.zeta = (lc.omega_L - d.omega0) / d.omega_s;
            lc.eta = d.gamma / d.omega_s;
            bool asym = !spec.methods.empty() && spec.methods[0] == "asym";
            LineSpectrum ls = asym ? sideband_lines_asym(d, lc, std::max(m, 1))
                                   : sideband_lines(d, lc, std::max(m, 1));
            for (const auto& line : ls.lines) {
                int ell = int(std::lround((lc.omega_L - line.frequency) / d.omega_s));
                push(ell, line.frequency, line.weight);
            }
        }
    } catch (const PoleError&) {
        for (int idx = lo; idx <= hi; ++idx) {
            SweepRow row;
            row.variable = double(idx);
            row.cells = {{std::nan(""), 0.0, false}, {std::nan(""), 0.0, false}};
            row.status = "pole";
            table.rows.push_back(std::move(row));
        }
        return table;
    }
    // Collapsed spectra (e.g. chi = 0) report only the surviving line;
    // fill the remaining requested indices with explicit zero weights.
    if (int(table.rows.size()) != hi - lo + 1) {
        std::vector<SweepRow> full;
        for (int idx = lo; idx <= hi; ++idx) {
            auto it = std::find_if(table.rows.begin(), table.rows.end(),
                                   [&](const SweepRow& r) { return int(r.variable) == idx; });
            if (it != table.rows.end()) {
                full.push_back(*it);
            } else {
                SweepRow row;
                row.variable = double(idx);
                row.cells = {{0.0, 0.0, true}, {0.0, 0.0, true}};
                full.push_back(std::move(row));
            }
        }
        table.rows = std::move(full);
    } else {
        std::sort(table.rows.begin(), table.rows.end(),
                  [](const SweepRow& a, const SweepRow& b) { return a.variable < b.variable; });
    }
    return table;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    return is_line_target(spec.target) ? run_line_sweep(spec) : run_grid_sweep(spec);
}

std::vector<Extremum> detect_extrema(const SweepTable& table, const std::string& column) {
    auto it = std::find(table.columns.begin(), table.columns.end(), column);
    if (it == table.columns.end())
        throw std::invalid_argument("column: no column named '" + column + "'");
    const size_t c = size_t(it - table.columns.begin());
    if (table.rows.size() < 5)
        throw std::invalid_argument("table: detect_extrema needs at least 5 rows");

    std::vector<Extremum> out;
    for (size_t i = 1; i + 1 < table.rows.size(); ++i) {
        const SweepRow &a = table.rows[i - 1], &b = table.rows[i], &cc = table.rows[i + 1];
        if (a.status != "ok" || b.status != "ok" || cc.status != "ok") continue;
        double y0 = a.cells[c].value, y1 = b.cells[c].value, y2 = cc.cells[c].value;
        bool is_max = y1 > y0 && y1 > y2;
        bool is_min = y1 < y0 && y1 < y2;
        if (!is_max && !is_min) continue;
        // Parabolic vertex through the three points (uniform spacing).
        double denom = y0 - 2.0 * y1 + y2;
        double h = 0.5 * (cc.variable - a.variable);
        double shift = denom != 0.0 ? 0.5 * h * (y0 - y2) / denom : 0.0;
        double value = denom != 0.0 ? y1 - (y0 - y2) * (y0 - y2) / (8.0 * denom) : y1;
        out.push_back({b.variable + shift, value, is_max});
    }
    return out;
}

double suppression_report(const SweepSpec& spec_a, const SweepSpec& spec_b) {
    if (spec_a.variable != spec_b.variable || spec_a.start != spec_b.start ||
        spec_a.stop != spec_b.stop || spec_a.points != spec_b.points) {
        throw std::invalid_argument("grids: suppression_report requires matching variable/range/points");
    }
    // Oscillation amplitude detrended against any smooth monotone
    // background: largest jump between successive interior local extrema
    // of the first column. A sweep with no interior extrema (monotone,
    // oscillation fully buried in the trend) scores 0.
    auto amplitude = [](const SweepSpec& s) {
        SweepTable t = run_sweep(s);
        std::vector<double> y;
        for (const auto& row : t.rows) {
            if (row.status == "ok") y.push_back(row.cells[0].value);
        }
        if (y.size() < 3) throw std::invalid_argument("grids: sweep produced too few valid rows");
        std::vector<double> extrema;
        for (size_t i = 1; i + 1 < y.size(); ++i) {
            if ((y[i] - y[i - 1]) * (y[i + 1] - y[i]) < 0.0) extrema.push_back(y[i]);
        }
        double amp = 0.0;
        for (size_t i = 1; i < extrema.size(); ++i) {
            amp = std::max(amp, std::abs(extrema[i] - extrema[i - 1]));
        }
        return amp;
    };
    const double ref = amplitude(spec_b);
    if (ref == 0.0) throw std::invalid_argument("grids: reference sweep has no oscillation");
    return amplitude(spec_a) / ref;
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    if (table.line_format) {
        out += "ell,frequency,weight\n";
        for (const auto& row : table.rows) {
            out += fmt17(row.variable);
            for (const auto& cell : row.cells) out += "," + fmt17(cell.value);
            out += "\n";
        }
        return out;
    }
    out += "variable";
    for (const auto& c : table.columns) out += "," + c + "," + c + "_err";
    out += ",status\n";
    for (const auto& row : table.rows) {
        out += fmt17(row.variable);
        for (const auto& cell : row.cells) out += "," + fmt17(cell.value) + "," + fmt17(cell.err);
        out += "," + row.status + "\n";
    }
    return out;
}

std::string to_json(const SweepTable& table) {
    json doc;
    doc["schema"] = 1;
    doc["variable"] = table.variable;
    doc["line_format"] = table.line_format;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r;
        r["variable"] = row.variable;
        json cells = json::array();
        for (const auto& cell : row.cells) {
            json c;
            c["value"] = cell.valid ? json(cell.value) : json(nullptr);
            c["err"] = cell.err;
            cells.push_back(std::move(c));
        }
        r["cells"] = std::move(cells);
        r["status"] = row.status;
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

SweepSpec spec_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.contains("schema") || !doc["schema"].is_number_integer() || doc["schema"] != 1)
        throw std::invalid_argument("schema: config requires \"schema\": 1");
    SweepSpec spec;
    try {
        spec.target = target_from_name(doc.at("target").get<std::string>());
        spec.variable = doc.at("variable").get<std::string>();
        spec.start = doc.at("start").get<double>();
        spec.stop = doc.at("stop").get<double>();
        spec.points = doc.at("points").get<int>();
        if (doc.contains("fixed")) {
            for (auto& [k, v] : doc["fixed"].items()) {
                if (!v.is_number()) throw std::invalid_argument("fixed: value for '" + k + "' must be numeric");
                spec.fixed[k] = v.get<double>();
            }
        }
        if (doc.contains("methods")) spec.methods = doc["methods"].get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return spec;
}

std::string spec_to_json(const SweepSpec& spec) {
    json doc;
    doc["schema"] = 1;
    doc["target"] = target_name(spec.target);
    doc["variable"] = spec.variable;
    doc["start"] = spec.start;
    doc["stop"] = spec.stop;
    doc["points"] = spec.points;
    doc["fixed"] = json::object();
    for (const auto& [k, v] : spec.fixed) doc["fixed"][k] = v;
    doc["methods"] = spec.methods;
    return doc.dump(2) + "\n";
}

}  // namespace spectra
