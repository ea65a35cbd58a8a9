#include "sievelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sievelab {

std::string num_str(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("num_str: non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Json::Json(double v) : kind_(Kind::floating) {
    if (!std::isfinite(v))
        throw std::invalid_argument("Json: non-finite value");
    d_ = v;
}

void Json::push(Json v) {
    if (kind_ != Kind::array)
        throw std::logic_error("Json::push on non-array");
    arr_.push_back(std::move(v));
}

Json& Json::set(const std::string& key, Json v) {
    if (kind_ != Kind::object)
        throw std::logic_error("Json::set on non-object");
    obj_.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::merge(Json other) {
    if (kind_ != Kind::object || other.kind_ != Kind::object)
        throw std::logic_error("Json::merge needs two objects");
    for (auto& kv : other.obj_) obj_.push_back(std::move(kv));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent, int depth) {
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::null_v: out += "null"; return;
        case Kind::boolean: out += b_ ? "true" : "false"; return;
        case Kind::integer: out += std::to_string(i_); return;
        case Kind::unsigned_integer: out += std::to_string(u_); return;
        case Kind::floating: out += num_str(d_); return;
        case Kind::string: write_escaped(out, s_); return;
        case Kind::array: {
            if (arr_.empty()) { out += "[]"; return; }
            out += "[\n";
            for (std::size_t i = 0; i < arr_.size(); ++i) {
                pad(out, indent, depth + 1);
                arr_[i].write(out, indent, depth + 1);
                out += i + 1 < arr_.size() ? ",\n" : "\n";
            }
            pad(out, indent, depth);
            out += ']';
            return;
        }
        case Kind::object: {
            if (obj_.empty()) { out += "{}"; return; }
            out += "{\n";
            for (std::size_t i = 0; i < obj_.size(); ++i) {
                pad(out, indent, depth + 1);
                write_escaped(out, obj_[i].first);
                out += ": ";
                obj_[i].second.write(out, indent, depth + 1);
                out += i + 1 < obj_.size() ? ",\n" : "\n";
            }
            pad(out, indent, depth);
            out += '}';
            return;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

Json document(const std::string& kind, Json payload) {
    if (!payload.is_object())
        throw std::logic_error("document: payload must be an object");
    Json doc = Json::object();
    doc.set("schema", "sievelab/" + kind + "/v1");
    doc.merge(std::move(payload));
    return doc;
}

Json to_json(const PlanStrategy& s) {
    Json j = Json::object();
    j.set("name", s.name());
    if (s.kind == PlanStrategy::Kind::random_start) j.set("seed", s.seed);
    if (s.kind == PlanStrategy::Kind::fixed_start)
        j.set("c", std::to_string(s.c_num) + "/" + std::to_string(s.c_den));
    return j;
}

Json to_json(const SievePlan& plan, bool include_residues) {
    Json entries = Json::array();
    for (const auto& e : plan.entries) {
        Json je = Json::object();
        je.set("p", static_cast<uint64_t>(e.p));
        je.set("kind", e.kind == ResidueSet::Kind::interval ? "interval"
                                                            : "explicit");
        if (e.kind == ResidueSet::Kind::interval) {
            je.set("start", static_cast<uint64_t>(e.start));
            je.set("length", static_cast<uint64_t>(e.length));
        }
        je.set("cardinality", static_cast<uint64_t>(e.cardinality()));
        if (include_residues) {
            Json rs = Json::array();
            for (uint32_t r : e.residues()) rs.push(static_cast<uint64_t>(r));
            je.set("residues", std::move(rs));
        }
        entries.push(std::move(je));
    }
    Json j = Json::object();
    j.set("n", plan.n);
    j.set("prime_count", static_cast<uint64_t>(plan.entries.size()));
    j.set("entries", std::move(entries));
    return j;
}

Json to_json(const LemmaPrimeRecord& rec) {
    Json j = Json::object();
    j.set("p", static_cast<uint64_t>(rec.p));
    j.set("s1_mag", rec.s1_mag);
    j.set("s2_mag", rec.s2_mag);
    j.set("lhs", rec.lhs);
    j.set("pass", rec.pass);
    j.set("third_ok", rec.third_ok);
    return j;
}

Json to_json(const LemmaReport& rep) {
    Json primes = Json::array();
    for (const auto& rec : rep.primes) primes.push(to_json(rec));
    Json j = Json::object();
    j.set("n", rep.n);
    j.set("survivor_count", rep.survivor_count);
    j.set("tol", rep.tol);
    j.set("all_pass", rep.all_pass);
    j.set("skipped_explicit", static_cast<uint64_t>(rep.skipped_explicit));
    j.set("prime_count", static_cast<uint64_t>(rep.primes.size()));
    j.set("primes", std::move(primes));
    return j;
}

Json to_json(const MomentRow& row) {
    Json j = Json::object();
    j.set("k", static_cast<uint64_t>(row.k));
    j.set("x", row.x);
    j.set("lhs", row.lhs);
    j.set("lhs_primes", row.lhs_primes);
    j.set("prime_count", row.prime_count);
    j.set("rhs", row.rhs);
    j.set("ratio", row.ratio);
    return j;
}

Json to_json(const ChainCheck& c) {
    Json j = Json::object();
    j.set("prime_count", c.prime_count);
    j.set("sum_max_sq", c.sum_max_sq);
    j.set("lower", c.lower);
    j.set("pass", c.pass);
    return j;
}

Json to_json(const PipelineReport& rep, bool with_timings) {
    Json j = Json::object();
    j.set("n", rep.n);
    j.set("strategy", rep.strategy);
    j.set("seed", rep.seed);
    j.set("survivor_count", rep.survivor_count);
    j.set("x", rep.x);
    j.set("ratio_cbrt", rep.ratio_cbrt);
    j.set("ratio_sqrt", rep.ratio_sqrt);
    j.set("lemma", to_json(rep.lemma));
    Json moments = Json::array();
    for (const auto& m : rep.moments) moments.push(to_json(m));
    j.set("moments", std::move(moments));
    j.set("chain", to_json(rep.chain));
    if (with_timings) j.set("elapsed_s", rep.elapsed_s);
    return j;
}

Json to_json(const std::vector<SweepRow>& rows, bool with_timings) {
    Json arr = Json::array();
    for (const auto& row : rows) {
        Json jr = Json::object();
        jr.set("n", row.n);
        jr.set("ok", row.report.has_value());
        if (row.report) jr.set("report", to_json(*row.report, with_timings));
        else jr.set("error", row.error);
        arr.push(std::move(jr));
    }
    Json j = Json::object();
    j.set("rows", std::move(arr));
    return j;
}

Json to_json(const TupleCountReport& rep, bool with_timings) {
    Json j = Json::object();
    j.set("x", rep.x);
    j.set("r", static_cast<uint64_t>(rep.r));
    j.set("e", rep.e.str());
    j.set("count", rep.count);
    j.set("diagonal_count", rep.diagonal_count);
    j.set("half_sums", rep.half_sums);
    j.set("distinct_sums", rep.distinct_sums);
    j.set("equal_pair_count", rep.equal_pair_count);
    j.set("backend", rep.backend);
    if (with_timings) j.set("elapsed_s", rep.elapsed_s);
    return j;
}

Json to_json(const SupScanResult& res) {
    Json j = Json::object();
    j.set("x", res.x);
    j.set("r", static_cast<uint64_t>(res.r));
    j.set("samples", res.samples);
    j.set("seed", res.seed);
    j.set("max_normalized", res.max_normalized);
    j.set("max_magnitude", res.max_magnitude);
    j.set("argmax_xi", res.argmax_xi.get_str());
    return j;
}

Json to_json(const QuadProbeResult& res) {
    Json j = Json::object();
    j.set("found", res.found);
    if (res.found) {
        j.set("alpha", res.alpha.get_str());
        j.set("beta", res.beta.get_str());
        j.set("gamma", res.gamma.get_str());
    }
    j.set("misses", res.misses);
    Json removed = Json::array();
    for (uint64_t v : res.removed) removed.push(v);
    j.set("removed", std::move(removed));
    return j;
}

Json to_json(const MajorantSpec& spec) {
    Json j = Json::object();
    j.set("half_width", spec.half_width);
    j.set("band_limit_cycles", spec.band_limit);
    j.set("band_limit_angular", spec.band_limit_angular());
    j.set("truncation", static_cast<uint64_t>(spec.truncation));
    return j;
}

Json to_json(const L1Report& rep) {
    Json j = Json::object();
    j.set("numeric", rep.numeric);
    j.set("closed_form", rep.closed_form);
    j.set("rel_err", rep.rel_err);
    j.set("tail_cutoff", rep.tail_cutoff);
    j.set("tail_bound", rep.tail_bound);
    j.set("panels", rep.panels);
    return j;
}

Json to_json(const DecayReport& rep) {
    Json pts = Json::array();
    for (const auto& pt : rep.points) {
        Json jp = Json::object();
        jp.set("xi", pt.xi);
        jp.set("magnitude", pt.magnitude);
        jp.set("beyond_band", pt.beyond_band);
        jp.set("ok", pt.ok);
        pts.push(std::move(jp));
    }
    Json j = Json::object();
    j.set("band_limit_angular", rep.band_limit_angular);
    j.set("tau", rep.tau);
    j.set("all_ok", rep.all_ok);
    j.set("points", std::move(pts));
    return j;
}

Json expsum_json(uint64_t x, const mpz_class& xi, std::complex<double> s) {
    Json j = Json::object();
    j.set("x", x);
    j.set("xi", xi.get_str());
    j.set("re", s.real());
    j.set("im", s.imag());
    j.set("magnitude", std::abs(s));
    j.set("normalized", std::abs(s) / std::sqrt(static_cast<double>(x)));
    return j;
}

Json large_sieve_json(uint64_t n, const SeparatedPoints& pts,
                      const std::vector<LargeSieveResult>& trials,
                      double slack) {
    double max_ratio = 0;
    bool all_pass = true;
    Json rows = Json::array();
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& res = trials[i];
        bool pass = res.ratio <= 1.0 + slack;
        max_ratio = std::max(max_ratio, res.ratio);
        all_pass = all_pass && pass;
        Json jr = Json::object();
        jr.set("trial", static_cast<uint64_t>(i));
        jr.set("lhs", res.lhs);
        jr.set("bound", res.bound);
        jr.set("ratio", res.ratio);
        jr.set("pass", pass);
        rows.push(std::move(jr));
    }
    Json j = Json::object();
    j.set("n", n);
    j.set("point_count", static_cast<uint64_t>(pts.points.size()));
    j.set("delta", pts.delta);
    j.set("slack", slack);
    j.set("trials", static_cast<uint64_t>(trials.size()));
    j.set("max_ratio", max_ratio);
    j.set("all_pass", all_pass);
    j.set("rows", std::move(rows));
    return j;
}

Json majorant_json(const MajorantSpec& spec, const L1Report& l1,
                   const DecayReport& decay, uint64_t grid_points,
                   double grid_min, double l1_tol, double grid_tol) {
    bool l1_ok = l1.rel_err <= l1_tol;
    bool grid_ok = grid_min >= 1.0 - grid_tol;
    Json grid = Json::object();
    grid.set("points", grid_points);
    grid.set("min", grid_min);
    Json checks = Json::object();
    checks.set("l1_tol", l1_tol);
    checks.set("grid_tol", grid_tol);
    checks.set("l1_ok", l1_ok);
    checks.set("decay_ok", decay.all_ok);
    checks.set("grid_ok", grid_ok);
    checks.set("all_ok", l1_ok && decay.all_ok && grid_ok);
    Json j = Json::object();
    j.set("spec", to_json(spec));
    j.set("l1", to_json(l1));
    j.set("decay", to_json(decay));
    j.set("grid", std::move(grid));
    j.set("checks", std::move(checks));
    return j;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) {
        width_ = header.size();
        append_row(header);
    }

    CsvTable& row(std::vector<std::string> cells) {
        if (cells.size() != width_)
            throw std::logic_error("CsvTable: row width mismatch");
        append_row(cells);
        return *this;
    }

    std::string str() const { return out_; }

private:
    void append_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += csv_escape(cells[i]);
        }
        out_ += '\n';
    }

    std::size_t width_ = 0;
    std::string out_;
};

std::string cell(uint64_t v) { return std::to_string(v); }
std::string cell(double v) { return num_str(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

std::vector<std::string> pipeline_cells(const PipelineReport& rep) {
    const MomentRow* m1 = nullptr;
    const MomentRow* m2 = nullptr;
    for (const auto& m : rep.moments) {
        if (m.k == 1) m1 = &m;
        if (m.k == 2) m2 = &m;
    }
    return {cell(rep.n),
            rep.strategy,
            cell(rep.seed),
            cell(rep.survivor_count),
            cell(rep.x),
            cell(rep.lemma.all_pass),
            cell(rep.chain.pass),
            m1 ? cell(m1->ratio) : std::string(),
            m2 ? cell(m2->ratio) : std::string(),
            cell(rep.ratio_cbrt),
            cell(rep.ratio_sqrt)};
}

const std::vector<std::string> kPipelineHeader = {
    "n", "strategy", "seed", "survivor_count", "x", "lemma_all_pass",
    "chain_pass", "moment1_ratio", "moment2_ratio", "ratio_cbrt",
    "ratio_sqrt"};

std::vector<std::string> tuples_cells(const TupleCountReport& rep) {
    return {cell(rep.x), cell(static_cast<uint64_t>(rep.r)), rep.e.str(),
            cell(rep.count), cell(rep.diagonal_count), cell(rep.half_sums),
            cell(rep.distinct_sums), cell(rep.equal_pair_count), rep.backend};
}

const std::vector<std::string> kTuplesHeader = {
    "x", "r", "e", "count", "diagonal_count", "half_sums",
    "distinct_sums", "equal_pair_count", "backend"};

} // namespace

std::string csv_primes(const std::vector<uint64_t>& primes) {
    CsvTable t({"p"});
    for (uint64_t p : primes) t.row({cell(p)});
    return t.str();
}

std::string csv_survivors(const SurvivorSet& a) {
    CsvTable t({"n"});
    a.for_each([&](uint64_t v) { t.row({cell(v)}); });
    return t.str();
}

std::string csv_lemma(const LemmaReport& rep) {
    CsvTable t({"p", "s1_mag", "s2_mag", "lhs", "pass", "third_ok"});
    for (const auto& rec : rep.primes)
        t.row({cell(static_cast<uint64_t>(rec.p)), cell(rec.s1_mag),
               cell(rec.s2_mag), cell(rec.lhs), cell(rec.pass),
               cell(rec.third_ok)});
    return t.str();
}

std::string csv_pipeline(const PipelineReport& rep) {
    CsvTable t(kPipelineHeader);
    t.row(pipeline_cells(rep));
    return t.str();
}

std::string csv_sweep(const std::vector<SweepRow>& rows) {
    auto header = kPipelineHeader;
    header.push_back("error");
    CsvTable t(header);
    for (const auto& row : rows) {
        if (row.report) {
            auto cells = pipeline_cells(*row.report);
            cells.push_back("");
            t.row(cells);
        } else {
            std::vector<std::string> cells(header.size());
            cells[0] = cell(row.n);
            cells.back() = row.error;
            t.row(cells);
        }
    }
    return t.str();
}

std::string csv_tuples(const TupleCountReport& rep) {
    CsvTable t(kTuplesHeader);
    t.row(tuples_cells(rep));
    return t.str();
}

std::string csv_tuples_oracle(uint64_t x, uint32_t r, RationalExponent e,
                              uint64_t count) {
    CsvTable t({"x", "r", "e", "count", "backend"});
    t.row({cell(x), cell(static_cast<uint64_t>(r)), e.str(), cell(count),
           "exhaustive"});
    return t.str();
}

std::string csv_tuples_scan(const std::vector<TupleCountReport>& reps,
                            double fit_slope) {
    auto header = kTuplesHeader;
    header.push_back("fit_slope");
    CsvTable t(header);
    for (const auto& rep : reps) {
        auto cells = tuples_cells(rep);
        cells.push_back(cell(fit_slope));
        t.row(cells);
    }
    return t.str();
}

std::string csv_expsum(uint64_t x, const mpz_class& xi,
                       std::complex<double> s) {
    CsvTable t({"x", "xi", "re", "im", "magnitude", "normalized"});
    t.row({cell(x), xi.get_str(), cell(s.real()), cell(s.imag()),
           cell(std::abs(s)),
           cell(std::abs(s) / std::sqrt(static_cast<double>(x)))});
    return t.str();
}

std::string csv_sup_scan(const SupScanResult& res) {
    CsvTable t({"x", "r", "samples", "seed", "max_normalized",
                "max_magnitude", "argmax_xi"});
    t.row({cell(res.x), cell(static_cast<uint64_t>(res.r)),
           cell(res.samples), cell(res.seed), cell(res.max_normalized),
           cell(res.max_magnitude), res.argmax_xi.get_str()});
    return t.str();
}

std::string csv_large_sieve(uint64_t n, const SeparatedPoints& pts,
                            const std::vector<LargeSieveResult>& trials,
                            double slack) {
    CsvTable t({"trial", "n", "point_count", "delta", "lhs", "bound",
                "ratio", "slack", "pass"});
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& res = trials[i];
        t.row({cell(static_cast<uint64_t>(i)), cell(n),
               cell(static_cast<uint64_t>(pts.points.size())),
               cell(pts.delta), cell(res.lhs), cell(res.bound),
               cell(res.ratio), cell(slack),
               cell(res.ratio <= 1.0 + slack)});
    }
    return t.str();
}

std::string csv_majorant(const MajorantSpec& spec, const L1Report& l1,
                         const DecayReport& decay, uint64_t grid_points,
                         double grid_min) {
    CsvTable t({"xi", "magnitude", "beyond_band", "ok", "band_limit_angular",
                "tau", "l1_numeric", "l1_closed_form", "l1_rel_err",
                "grid_points", "grid_min"});
    for (const auto& pt : decay.points)
        t.row({cell(pt.xi), cell(pt.magnitude), cell(pt.beyond_band),
               cell(pt.ok), cell(spec.band_limit_angular()), cell(decay.tau),
               cell(l1.numeric), cell(l1.closed_form), cell(l1.rel_err),
               cell(grid_points), cell(grid_min)});
    return t.str();
}

} // namespace sievelab
