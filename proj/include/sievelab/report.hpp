#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sievelab/fourier.hpp"
#include "sievelab/majorant.hpp"
#include "sievelab/pipeline.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/quad_probe.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/tuple_counts.hpp"

namespace sievelab {

// Doubles rendered with 15 significant digits; throws on non-finite input.
std::string num_str(double v);

// Minimal write-only JSON tree. Object keys keep insertion order, integers
// stay exact, doubles go through num_str, so a report's byte stream is a
// pure function of its values.
class Json {
public:
    Json() : kind_(Kind::null_v) {}
    Json(bool b) : kind_(Kind::boolean) { b_ = b; }
    Json(int v) : kind_(Kind::integer) { i_ = v; }
    Json(int64_t v) : kind_(Kind::integer) { i_ = v; }
    Json(unsigned v) : kind_(Kind::unsigned_integer) { u_ = v; }
    Json(uint64_t v) : kind_(Kind::unsigned_integer) { u_ = v; }
    Json(double v);
    Json(const char* s) : kind_(Kind::string), s_(s) {}
    Json(std::string s) : kind_(Kind::string), s_(std::move(s)) {}

    static Json array() { Json j; j.kind_ = Kind::array; return j; }
    static Json object() { Json j; j.kind_ = Kind::object; return j; }

    bool is_object() const { return kind_ == Kind::object; }

    void push(Json v);                          // array only
    Json& set(const std::string& key, Json v);  // object only, appends
    Json& merge(Json other);                    // append other's fields

    std::string dump(int indent = 2) const;

private:
    enum class Kind { null_v, boolean, integer, unsigned_integer,
                      floating, string, array, object };

    void write(std::string& out, int indent, int depth) const;

    Kind kind_;
    bool b_ = false;
    int64_t i_ = 0;
    uint64_t u_ = 0;
    double d_ = 0;
    std::string s_;
    std::vector<Json> arr_;
    std::vector<std::pair<std::string, Json>> obj_;
};

// Top-level wrapper: {"schema": "sievelab/<kind>/v1", ...payload fields}.
Json document(const std::string& kind, Json payload);

Json to_json(const PlanStrategy& s);
Json to_json(const SievePlan& plan, bool include_residues = false);
Json to_json(const LemmaPrimeRecord& rec);
Json to_json(const LemmaReport& rep);
Json to_json(const MomentRow& row);
Json to_json(const ChainCheck& c);
Json to_json(const PipelineReport& rep, bool with_timings = false);
Json to_json(const std::vector<SweepRow>& rows, bool with_timings = false);
Json to_json(const TupleCountReport& rep, bool with_timings = false);
Json to_json(const SupScanResult& res);
Json to_json(const QuadProbeResult& res);
Json to_json(const MajorantSpec& spec);
Json to_json(const L1Report& rep);
Json to_json(const DecayReport& rep);

Json expsum_json(uint64_t x, const mpz_class& xi, std::complex<double> s);
Json large_sieve_json(uint64_t n, const SeparatedPoints& pts,
                      const std::vector<LargeSieveResult>& trials,
                      double slack);
Json majorant_json(const MajorantSpec& spec, const L1Report& l1,
                   const DecayReport& decay, uint64_t grid_points,
                   double grid_min, double l1_tol, double grid_tol);

// CSV renderings. Every table has a header row, rows end in '\n', booleans
// are "true"/"false", doubles use num_str. Nested reports are flattened to
// one row per natural record; whole-run scalars are broadcast per row.
std::string csv_primes(const std::vector<uint64_t>& primes);
std::string csv_survivors(const SurvivorSet& a);
std::string csv_lemma(const LemmaReport& rep);
std::string csv_pipeline(const PipelineReport& rep);
std::string csv_sweep(const std::vector<SweepRow>& rows);
std::string csv_tuples(const TupleCountReport& rep);
std::string csv_tuples_oracle(uint64_t x, uint32_t r, RationalExponent e,
                              uint64_t count);
std::string csv_tuples_scan(const std::vector<TupleCountReport>& reps,
                            double fit_slope);
std::string csv_expsum(uint64_t x, const mpz_class& xi,
                       std::complex<double> s);
std::string csv_sup_scan(const SupScanResult& res);
std::string csv_large_sieve(uint64_t n, const SeparatedPoints& pts,
                            const std::vector<LargeSieveResult>& trials,
                            double slack);
std::string csv_majorant(const MajorantSpec& spec, const L1Report& l1,
                         const DecayReport& decay, uint64_t grid_points,
                         double grid_min);

} // namespace sievelab
