#include "jlcrit/phase_diagram.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "jlcrit/errors.hpp"
#include "jlcrit/exponents.hpp"

namespace jlcrit {

using ojson = nlohmann::ordered_json;

std::string_view axis_name(Axis a) noexcept {
    switch (a) {
        case Axis::s: return "s";
        case Axis::ell: return "l";
        case Axis::p: return "p";
    }
    return "?";
}

Axis parse_axis(std::string_view name) {
    if (name == "s") return Axis::s;
    if (name == "l" || name == "ell") return Axis::ell;
    if (name == "p") return Axis::p;
    throw DomainError("unknown scan axis '" + std::string(name) + "' (expected s, l or p)");
}

double AxisRange::at(int i) const {
    if (count == 1) return min;
    if (i == count - 1) return max;
    return min + (max - min) * static_cast<double>(i) / (count - 1);
}

AxisRange parse_grid(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw DomainError("grid '" + text + "': expected name=min:max:count");
    }
    AxisRange r;
    r.axis = parse_axis(text.substr(0, eq));
    std::istringstream in(text.substr(eq + 1));
    char c1 = 0, c2 = 0;
    std::string rest;
    if (!(in >> r.min >> c1 >> r.max >> c2 >> r.count) || c1 != ':' || c2 != ':' || (in >> rest)) {
        throw DomainError("grid '" + text + "': expected name=min:max:count");
    }
    return r;
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw DomainError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

bool ScanSpec::has_axis(Axis a) const {
    return std::any_of(axes.begin(), axes.end(), [a](const AxisRange& r) { return r.axis == a; });
}

void ScanSpec::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw DomainError("scan: one or two --grid axes are required");
    }
    if (axes.size() == 2 && axes[0].axis == axes[1].axis) {
        throw DomainError("scan: the two axes must differ");
    }
    for (const auto& r : axes) {
        const std::string name(axis_name(r.axis));
        if (!std::isfinite(r.min) || !std::isfinite(r.max)) {
            throw DomainError("scan: axis " + name + " bounds must be finite");
        }
        if (r.count == 1) {
            if (r.min != r.max) throw DomainError("scan: axis " + name + " with count 1 needs min = max");
        } else if (r.count < 2) {
            throw DomainError("scan: axis " + name + " requires count >= 2");
        } else if (!(r.min < r.max)) {
            throw DomainError("scan: axis " + name + " requires min < max");
        }
    }
    if (!has_axis(Axis::p) && !p) {
        throw DomainError("scan: --p is required when p is not a scan axis");
    }
    if (!(tol > 0.0)) throw DomainError("scan: tol must be positive");
    if (samples < 16) throw DomainError("scan: samples must be >= 16");
    if (N < 1) throw DomainError("domain violation: requires N >= 1 (got N=" + std::to_string(N) + ")");
}

namespace {

std::size_t cell_count(const ScanSpec& spec) {
    std::size_t n = 1;
    for (const auto& r : spec.axes) n *= static_cast<std::size_t>(r.count);
    return n;
}

// Parameter values for the cell with the given per-axis indices.
ProblemParams point(const ScanSpec& spec, const std::vector<double>& coords) {
    ProblemParams pp;
    pp.N = spec.N;
    pp.s = spec.s;
    pp.ell = spec.ell;
    pp.p = spec.p;
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        switch (spec.axes[k].axis) {
            case Axis::s: pp.s = coords[k]; break;
            case Axis::ell: pp.ell = coords[k]; break;
            case Axis::p: pp.p = coords[k]; break;
        }
    }
    return pp;
}

std::vector<double> coords_of(const ScanSpec& spec, std::size_t index) {
    std::vector<double> c(spec.axes.size());
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
        const auto n = static_cast<std::size_t>(spec.axes[k].count);
        c[k] = spec.axes[k].at(static_cast<int>(index % n));
        index /= n;
    }
    return c;
}

Cell evaluate(const ScanSpec& spec, std::size_t index) {
    Cell cell;
    cell.coords = coords_of(spec, index);
    const ProblemParams pp = point(spec, cell.coords);
    try {
        pp.validate();
    } catch (const DomainError&) {
        return cell;
    }
    const Classification c = classify(pp, spec.tol);
    cell.label = c.label;
    cell.margin = c.margin;
    return cell;
}

void add_annotations(PhaseDiagram& pd) {
    const ScanSpec& spec = pd.spec;
    const ScanOptions opts{spec.samples, spec.tol};

    if (spec.has_axis(Axis::p)) {
        // Critical exponents along the other axis (or at the fixed point).
        const AxisRange* other = nullptr;
        for (const auto& r : spec.axes) {
            if (r.axis != Axis::p) other = &r;
        }
        const int rows = other ? other->count : 1;
        for (int i = 0; i < rows; ++i) {
            double s = spec.s;
            double ell = spec.ell;
            if (other) (other->axis == Axis::s ? s : ell) = other->at(i);
            CriticalSet set;
            try {
                validate_setting(spec.N, s, ell);
                set = jl_critical_set(spec.N, s, ell, opts);
            } catch (const DomainError&) {
                continue;
            }
            for (const auto& c : set.crossings) {
                if (!c.p.is_finite()) continue;
                Annotation a{"crossing", {}};
                if (other) a.values.emplace_back(std::string(axis_name(other->axis)), other->at(i));
                a.values.emplace_back("p", c.p.value());
                a.values.emplace_back("multiplicity", c.multiplicity);
                pd.annotations.push_back(std::move(a));
            }
        }
    }

    if (spec.has_axis(Axis::s) && !spec.has_axis(Axis::ell) && spec.ell == 0.0 &&
        (spec.N == 8 || spec.N == 9)) {
        pd.annotations.push_back({"s_N", {{"s", s_threshold(spec.N)}}});
    }

    if (spec.has_axis(Axis::ell) && !spec.has_axis(Axis::s) && spec.N >= 8) {
        try {
            const EllThresholds t = ell_thresholds(spec.N, spec.s);
            pd.annotations.push_back(
                {"l_thresholds", {{"l1", t.ell1}, {"l2", t.ell2}, {"l3", t.ell3}}});
        } catch (const DomainError&) {
        }
    }
}

}  // namespace

PhaseDiagram run_scan(const ScanSpec& spec, unsigned threads) {
    spec.validate();
    PhaseDiagram pd;
    pd.spec = spec;
    const std::size_t n = cell_count(spec);
    pd.cells.resize(n);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    constexpr std::size_t kChunk = 64;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto work = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= n) return;
            const std::size_t end = std::min(n, begin + kChunk);
            try {
                for (std::size_t i = begin; i < end; ++i) pd.cells[i] = evaluate(spec, i);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    add_annotations(pd);
    return pd;
}

namespace {

constexpr std::string_view kOutOfDomain = "out-of-domain";

std::string label_text(const Cell& c) {
    return c.label ? std::string(to_string(*c.label)) : std::string(kOutOfDomain);
}

std::optional<Label> parse_label(const std::string& text) {
    for (Label l : {Label::Subcritical, Label::Critical, Label::Supercritical}) {
        if (text == to_string(l)) return l;
    }
    if (text == kOutOfDomain) return std::nullopt;
    throw DomainError("phase diagram: unknown label '" + text + "'");
}

// Fixed parameters among s, l, p, in that order.
std::vector<std::pair<Axis, double>> fixed_values(const ScanSpec& spec) {
    std::vector<std::pair<Axis, double>> out;
    if (!spec.has_axis(Axis::s)) out.emplace_back(Axis::s, spec.s);
    if (!spec.has_axis(Axis::ell)) out.emplace_back(Axis::ell, spec.ell);
    if (!spec.has_axis(Axis::p) && spec.p) out.emplace_back(Axis::p, *spec.p);
    return out;
}

}  // namespace

std::string to_csv(const PhaseDiagram& pd) {
    const auto fixed = fixed_values(pd.spec);
    std::string out;
    for (const auto& r : pd.spec.axes) out.append(axis_name(r.axis)).push_back(',');
    for (const auto& f : fixed) out.append(axis_name(f.first)).push_back(',');
    out += "label,margin\n";

    std::string fixed_cols;
    for (const auto& f : fixed) fixed_cols += format_real(f.second) + ',';
    for (const auto& c : pd.cells) {
        for (double v : c.coords) out += format_real(v) + ',';
        out += fixed_cols;
        out += label_text(c);
        out.push_back(',');
        if (c.margin) out += format_real(*c.margin);
        out.push_back('\n');
    }
    return out;
}

std::string to_json(const PhaseDiagram& pd) {
    const ScanSpec& spec = pd.spec;
    ojson meta;
    meta["N"] = spec.N;
    ojson axes = ojson::array();
    for (const auto& r : spec.axes) {
        axes.push_back({{"name", axis_name(r.axis)}, {"min", r.min}, {"max", r.max}, {"count", r.count}});
    }
    meta["axes"] = axes;
    ojson fixed = ojson::object();
    for (const auto& f : fixed_values(spec)) fixed[std::string(axis_name(f.first))] = f.second;
    meta["fixed"] = fixed;
    meta["tol"] = spec.tol;
    meta["samples"] = spec.samples;

    ojson cells = ojson::array();
    for (const auto& c : pd.cells) {
        ojson cell = ojson::object();
        for (std::size_t k = 0; k < c.coords.size(); ++k) {
            cell[std::string(axis_name(spec.axes[k].axis))] = c.coords[k];
        }
        cell["label"] = label_text(c);
        cell["margin"] = c.margin ? ojson(*c.margin) : ojson(nullptr);
        cells.push_back(std::move(cell));
    }

    ojson notes = ojson::array();
    for (const auto& a : pd.annotations) {
        ojson note = ojson::object();
        note["kind"] = a.kind;
        for (const auto& [k, v] : a.values) note[k] = v;
        notes.push_back(std::move(note));
    }

    ojson doc;
    doc["meta"] = std::move(meta);
    doc["cells"] = std::move(cells);
    doc["annotations"] = std::move(notes);
    return doc.dump(1) + "\n";
}

PhaseDiagram phase_diagram_from_json(const std::string& text) {
    PhaseDiagram pd;
    try {
        const ojson doc = ojson::parse(text);
        const ojson& meta = doc.at("meta");
        ScanSpec& spec = pd.spec;
        spec.format = Format::json;
        spec.N = meta.at("N").get<int>();
        for (const auto& a : meta.at("axes")) {
            spec.axes.push_back({parse_axis(a.at("name").get<std::string>()), a.at("min").get<double>(),
                                 a.at("max").get<double>(), a.at("count").get<int>()});
        }
        for (const auto& [key, value] : meta.at("fixed").items()) {
            switch (parse_axis(key)) {
                case Axis::s: spec.s = value.get<double>(); break;
                case Axis::ell: spec.ell = value.get<double>(); break;
                case Axis::p: spec.p = value.get<double>(); break;
            }
        }
        spec.tol = meta.at("tol").get<double>();
        spec.samples = meta.at("samples").get<int>();
        spec.validate();

        for (const auto& c : doc.at("cells")) {
            Cell cell;
            for (const auto& r : spec.axes) cell.coords.push_back(c.at(std::string(axis_name(r.axis))).get<double>());
            cell.label = parse_label(c.at("label").get<std::string>());
            if (!c.at("margin").is_null()) cell.margin = c.at("margin").get<double>();
            pd.cells.push_back(std::move(cell));
        }
        if (pd.cells.size() != cell_count(spec)) {
            throw DomainError("phase diagram: cell count does not match the axes");
        }
        for (const auto& a : doc.at("annotations")) {
            Annotation note;
            for (const auto& [key, value] : a.items()) {
                if (key == "kind") {
                    note.kind = value.get<std::string>();
                } else {
                    note.values.emplace_back(key, value.get<double>());
                }
            }
            pd.annotations.push_back(std::move(note));
        }
    } catch (const ojson::exception& e) {
        throw DomainError(std::string("phase diagram: malformed JSON: ") + e.what());
    }
    return pd;
}

std::string render(const PhaseDiagram& pd) {
    return pd.spec.format == Format::json ? to_json(pd) : to_csv(pd);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir)) {
        throw DomainError("output directory does not exist: " + dir.string());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("failed to write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("failed to rename " + tmp.string() + ": " + ec.message());
    }
}

}  // namespace jlcrit
