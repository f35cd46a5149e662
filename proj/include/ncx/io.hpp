#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncomplex.hpp"
#include "quiver_rep.hpp"

namespace ncx {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Bad document: unparsable, schema violation, or a failed invariant.
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what) {}
};

struct RingDescriptor {
  RingKind kind = RingKind::prime_field;
  std::uint32_t p = 2;
  int m = 1;
};

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw MalformedInput(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(where, std::string("missing field '") + key + "'");
  return *it;
}

inline long long as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw MalformedInput(where, "expected an integer");
  return j.get<long long>();
}

inline std::size_t as_size(const json& j, const std::string& where) {
  long long v = as_int(j, where);
  if (v < 0) throw MalformedInput(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline int degree_key(const std::string& k, const std::string& where) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(k, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos == 0 || pos != k.size() || std::to_string(v) != k)
    throw MalformedInput(where, "degree key '" + k + "' is not a decimal integer");
  return v;
}

inline json big_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

inline mpz_class big_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  throw MalformedInput(where, "expected an integer");
}

template <class F>
json scalar_to_json(const F& field, const typename F::value_type& v) {
  if constexpr (std::is_same_v<F, RationalField>) {
    (void)field;
    return json::array({big_to_json(v.get_num()), big_to_json(v.get_den())});
  } else {
    (void)field;
    return json(v);
  }
}

template <class F>
typename F::value_type scalar_from_json(const F& field, const json& j, const std::string& where) {
  if constexpr (std::is_same_v<F, RationalField>) {
    mpz_class num, den(1);
    if (j.is_array()) {
      if (j.size() != 2) throw MalformedInput(where, "expected [numerator, denominator]");
      num = big_from_json(j[0], where);
      den = big_from_json(j[1], where);
    } else {
      num = big_from_json(j, where);
    }
    if (den == 0) throw MalformedInput(where, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } else {
    return field.from_int(as_int(j, where));
  }
}

}  // namespace detail

inline json ring_to_json(const RingDescriptor& r) {
  switch (r.kind) {
    case RingKind::rationals:
      return {{"kind", "rationals"}};
    case RingKind::prime_field:
      return {{"kind", "prime_field"}, {"p", r.p}};
    case RingKind::truncated_poly:
      return {{"kind", "truncated_poly"}, {"p", r.p}, {"m", r.m}};
  }
  return {};
}

inline RingDescriptor ring_from_json(const json& j, const std::string& where = "ring") {
  RingDescriptor r;
  const json& kind = detail::field(j, "kind", where);
  if (!kind.is_string()) throw MalformedInput(where + ".kind", "expected a string");
  std::string k = kind.get<std::string>();
  if (k == "rationals") {
    r.kind = RingKind::rationals;
    return r;
  }
  long long p = detail::as_int(detail::field(j, "p", where), where + ".p");
  if (p < 2 || p >= (1LL << 31) || !is_prime(static_cast<std::uint64_t>(p)))
    throw MalformedInput(where + ".p", "expected a prime below 2^31");
  r.p = static_cast<std::uint32_t>(p);
  if (k == "prime_field") {
    r.kind = RingKind::prime_field;
  } else if (k == "truncated_poly") {
    long long m = detail::as_int(detail::field(j, "m", where), where + ".m");
    if (m < 1) throw MalformedInput(where + ".m", "truncation order must be >= 1");
    r.m = static_cast<int>(m);
    r.kind = m == 1 ? RingKind::prime_field : RingKind::truncated_poly;
  } else {
    throw MalformedInput(where + ".kind", "unknown ring kind '" + k + "'");
  }
  return r;
}

template <class F>
RingDescriptor describe(const CoeffRing<F>& ring) {
  RingDescriptor r;
  r.kind = ring.kind();
  if constexpr (!std::is_same_v<F, RationalField>) r.p = ring.field.p;
  r.m = ring.trunc;
  return r;
}

/// Calls fn(CoeffRing<PrimeField>) or fn(CoeffRing<RationalField>).
template <class Fn>
decltype(auto) with_ring(const RingDescriptor& r, Fn&& fn) {
  if (r.kind == RingKind::rationals) return fn(CoeffRing<RationalField>(RationalField{}));
  return fn(CoeffRing<PrimeField>(PrimeField(r.p), r.m));
}

inline json support_to_json(const Support& s) {
  if (s.periodic) return {{"type", "periodic"}, {"period", s.period}};
  return {{"type", "bounded"}, {"lo", s.lo}, {"hi", s.hi}};
}

inline Support support_from_json(const json& j, const std::string& where = "support") {
  const json& t = detail::field(j, "type", where);
  if (t == "periodic") {
    long long p = detail::as_int(detail::field(j, "period", where), where + ".period");
    if (p < 1) throw MalformedInput(where + ".period", "period must be >= 1");
    return Support::cyclic(static_cast<int>(p));
  }
  if (t == "bounded") {
    long long lo = detail::as_int(detail::field(j, "lo", where), where + ".lo");
    long long hi = detail::as_int(detail::field(j, "hi", where), where + ".hi");
    if (lo > hi) return Support::bounded(0, -1);
    return Support::bounded(static_cast<int>(lo), static_cast<int>(hi));
  }
  throw MalformedInput(where + ".type", "expected 'bounded' or 'periodic'");
}

template <class F>
json matrix_to_json(const RingMatrix<F>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = m.entry(i, j);
      if (m.ring().trunc == 1) {
        entries.push_back(detail::scalar_to_json(m.ring().field, c[0]));
      } else {
        json a = json::array();
        for (const auto& v : c) a.push_back(detail::scalar_to_json(m.ring().field, v));
        entries.push_back(std::move(a));
      }
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <class F>
RingMatrix<F> matrix_from_json(const CoeffRing<F>& ring, const json& j, std::size_t rows, std::size_t cols,
                               const std::string& where) {
  std::size_t r = detail::as_size(detail::field(j, "rows", where), where + ".rows");
  std::size_t c = detail::as_size(detail::field(j, "cols", where), where + ".cols");
  if (r != rows || c != cols)
    throw MalformedInput(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                                    std::to_string(r) + "x" + std::to_string(c));
  const json& e = detail::field(j, "entries", where);
  if (!e.is_array() || e.size() != r * c)
    throw MalformedInput(where + ".entries", "expected " + std::to_string(r * c) + " entries");
  RingMatrix<F> m(ring, r, c);
  for (std::size_t k = 0; k < e.size(); ++k) {
    std::string at = where + ".entries[" + std::to_string(k) + "]";
    std::vector<typename F::value_type> coeffs;
    if (ring.trunc == 1) {
      coeffs.push_back(detail::scalar_from_json(ring.field, e[k], at));
    } else {
      if (!e[k].is_array() || e[k].size() != static_cast<std::size_t>(ring.trunc))
        throw MalformedInput(at, "expected " + std::to_string(ring.trunc) + " coefficients");
      for (const auto& v : e[k]) coeffs.push_back(detail::scalar_from_json(ring.field, v, at));
    }
    m.set_entry(k / c, k % c, coeffs);
  }
  return m;
}

template <class F>
DegreeRange stored_degrees(const NComplex<F>& x) {
  if (x.periodic()) return {0, x.support().period - 1};
  return {x.support().lo, x.support().hi};
}

template <class F>
json complex_to_json(const NComplex<F>& x) {
  json dims = json::object(), diffs = json::object();
  DegreeRange r = stored_degrees(x);
  for (int i = r.lo; i <= r.hi; ++i) {
    dims[std::to_string(i)] = x.dim(i);
    if (x.dim(i) && x.dim(i + 1)) diffs[std::to_string(i)] = matrix_to_json(x.d(i));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "ncomplex"},
          {"N", x.N()},
          {"ring", ring_to_json(describe(x.ring()))},
          {"support", support_to_json(x.support())},
          {"dims", std::move(dims)},
          {"diffs", std::move(diffs)}};
}

inline void check_header(const json& j, const char* kind, const std::string& where = "") {
  std::string at = where.empty() ? "" : where + ".";
  const json& v = detail::field(j, "schema_version", where);
  if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion)
    throw MalformedInput(at + "schema_version", "unsupported schema version");
  const json& k = detail::field(j, "kind", where);
  if (!k.is_string() || k.get<std::string>() != kind)
    throw MalformedInput(at + "kind", std::string("expected '") + kind + "'");
}

inline std::string document_kind(const json& j) {
  const json& k = detail::field(j, "kind", "");
  if (!k.is_string()) throw MalformedInput("kind", "expected a string");
  return k.get<std::string>();
}

inline RingDescriptor document_ring(const json& j, const std::string& where = "") {
  return ring_from_json(detail::field(j, "ring", where), where.empty() ? "ring" : where + ".ring");
}

/// Loads and validates; any failure is reported with its location.
template <class F>
NComplex<F> complex_from_json(const CoeffRing<F>& ring, const json& j, const std::string& where = "") {
  std::string at = where.empty() ? "" : where + ".";
  check_header(j, "ncomplex", where);
  long long N = detail::as_int(detail::field(j, "N", where), at + "N");
  if (N < 2) throw MalformedInput(at + "N", "N must be >= 2");
  Support s = support_from_json(detail::field(j, "support", where), at + "support");
  if (s.periodic && s.period > 100000) throw MalformedInput(at + "support.period", "period too large");
  if (!s.periodic && !s.empty() && static_cast<long long>(s.hi) - s.lo > 100000)
    throw MalformedInput(at + "support", "support too wide");
  const json& dj = detail::field(j, "dims", where);
  if (!dj.is_object()) throw MalformedInput(at + "dims", "expected an object keyed by degree");
  std::vector<std::size_t> dims(s.size(), 0);
  for (auto it = dj.begin(); it != dj.end(); ++it) {
    std::string loc = at + "dims." + it.key();
    int i = detail::degree_key(it.key(), loc);
    auto slot = s.index(i);
    if (!slot || (s.periodic && i != static_cast<int>(*slot))) throw MalformedInput(loc, "degree outside the support");
    dims[*slot] = detail::as_size(it.value(), loc);
  }
  NComplex<F> x(static_cast<int>(N), ring, s, dims);
  const json& fj = detail::field(j, "diffs", where);
  if (!fj.is_object()) throw MalformedInput(at + "diffs", "expected an object keyed by degree");
  for (auto it = fj.begin(); it != fj.end(); ++it) {
    std::string loc = at + "diffs." + it.key();
    int i = detail::degree_key(it.key(), loc);
    auto slot = s.index(i);
    if (!slot || (s.periodic && i != static_cast<int>(*slot))) throw MalformedInput(loc, "degree outside the support");
    x.set_d(i, matrix_from_json(ring, it.value(), x.dim(i + 1), x.dim(i), loc));
  }
  auto rep = validate(x);
  if (!rep.ok) throw MalformedInput(at + "diffs." + std::to_string(rep.degree.value_or(0)), rep.message);
  return x;
}

template <class F>
json chain_map_to_json(const ChainMapN<F>& f) {
  json maps = json::object();
  for (const auto& [i, m] : f.maps())
    if (m.rows() && m.cols()) maps[std::to_string(i)] = matrix_to_json(m);
  return {{"schema_version", kSchemaVersion},
          {"kind", "chain_map"},
          {"ring", ring_to_json(describe(f.source().ring()))},
          {"source", complex_to_json(f.source())},
          {"target", complex_to_json(f.target())},
          {"maps", std::move(maps)}};
}

template <class F>
ChainMapN<F> chain_map_from_json(const CoeffRing<F>& ring, const json& j) {
  check_header(j, "chain_map");
  auto x = complex_from_json(ring, detail::field(j, "source", ""), "source");
  auto y = complex_from_json(ring, detail::field(j, "target", ""), "target");
  if (x.N() != y.N()) throw MalformedInput("target.N", "source and target have different N");
  if (x.periodic() != y.periodic() || (x.periodic() && x.support().period != y.support().period))
    throw MalformedInput("target.support", "periodic maps need equal periods on both sides");
  ChainMapN<F> f(x, y);
  const json& mj = detail::field(j, "maps", "");
  if (!mj.is_object()) throw MalformedInput("maps", "expected an object keyed by degree");
  for (auto it = mj.begin(); it != mj.end(); ++it) {
    std::string loc = "maps." + it.key();
    int i = detail::degree_key(it.key(), loc);
    f.set(i, matrix_from_json(ring, it.value(), y.dim(i), x.dim(i), loc));
  }
  auto rep = validate(f);
  if (!rep.ok) throw MalformedInput("maps." + std::to_string(rep.degree.value_or(0)), rep.message);
  return f;
}

template <class F>
json rep_map_to_json(const RepMap<F>& m) {
  json a = json::array();
  for (const auto& v : m) a.push_back(matrix_to_json(v));
  return a;
}

template <class F>
json rep_complex_to_json(const RepComplex<F>& c) {
  json terms = json::object(), diffs = json::object();
  DegreeRange r = c.periodic() ? DegreeRange{0, c.support().period - 1} : DegreeRange{c.support().lo, c.support().hi};
  for (int i = r.lo; i <= r.hi; ++i) {
    auto t = c.term(i);
    json arrows = json::array();
    for (const auto& a : t.arrows) arrows.push_back(matrix_to_json(a));
    terms[std::to_string(i)] = {{"dims", t.vdims}, {"arrows", std::move(arrows)}};
    if (!t.is_zero() && !c.term(i + 1).is_zero()) diffs[std::to_string(i)] = rep_map_to_json(c.d(i));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "rep_complex"},
          {"vertices", c.n()},
          {"ring", ring_to_json(describe(c.ring()))},
          {"support", support_to_json(c.support())},
          {"terms", std::move(terms)},
          {"diffs", std::move(diffs)}};
}

template <class F>
RepComplex<F> rep_complex_from_json(const CoeffRing<F>& ring, const json& j) {
  check_header(j, "rep_complex");
  long long n = detail::as_int(detail::field(j, "vertices", ""), "vertices");
  if (n < 1) throw MalformedInput("vertices", "need at least one vertex");
  Support s = support_from_json(detail::field(j, "support", ""));
  std::vector<LineRep<F>> terms(s.size(), LineRep<F>::zero(ring, static_cast<int>(n)));
  const json& tj = detail::field(j, "terms", "");
  if (!tj.is_object()) throw MalformedInput("terms", "expected an object keyed by degree");
  for (auto it = tj.begin(); it != tj.end(); ++it) {
    std::string loc = "terms." + it.key();
    int i = detail::degree_key(it.key(), loc);
    auto slot = s.index(i);
    if (!slot || (s.periodic && i != static_cast<int>(*slot))) throw MalformedInput(loc, "degree outside the support");
    const json& dj = detail::field(it.value(), "dims", loc);
    if (!dj.is_array() || dj.size() != static_cast<std::size_t>(n))
      throw MalformedInput(loc + ".dims", "expected one dimension per vertex");
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < dj.size(); ++v) dims.push_back(detail::as_size(dj[v], loc + ".dims"));
    LineRep<F> rep(ring, dims);
    const json& aj = detail::field(it.value(), "arrows", loc);
    if (!aj.is_array() || aj.size() + 1 != static_cast<std::size_t>(n))
      throw MalformedInput(loc + ".arrows", "expected one matrix per arrow");
    for (std::size_t v = 0; v + 1 < dims.size(); ++v)
      rep.arrows[v] = matrix_from_json(ring, aj[v], dims[v + 1], dims[v], loc + ".arrows[" + std::to_string(v) + "]");
    terms[*slot] = std::move(rep);
  }
  RepComplex<F> c(static_cast<int>(n), ring, s, terms);
  const json& fj = detail::field(j, "diffs", "");
  if (!fj.is_object()) throw MalformedInput("diffs", "expected an object keyed by degree");
  for (auto it = fj.begin(); it != fj.end(); ++it) {
    std::string loc = "diffs." + it.key();
    int i = detail::degree_key(it.key(), loc);
    if (!s.index(i)) throw MalformedInput(loc, "degree outside the support");
    if (!it.value().is_array() || it.value().size() != static_cast<std::size_t>(n))
      throw MalformedInput(loc, "expected one matrix per vertex");
    RepMap<F> m;
    for (int v = 0; v < n; ++v)
      m.push_back(matrix_from_json(ring, it.value()[v], c.dim(i + 1, v), c.dim(i, v),
                                   loc + "[" + std::to_string(v) + "]"));
    c.set_d(i, std::move(m));
  }
  auto rep = validate(c);
  if (!rep.ok) throw MalformedInput("diffs." + std::to_string(rep.degree.value_or(0)), rep.message);
  return c;
}

template <class F>
json rep_chain_map_to_json(const RepChainMap<F>& f) {
  json maps = json::object();
  for (const auto& [i, m] : f.maps()) maps[std::to_string(i)] = rep_map_to_json(m);
  return {{"schema_version", kSchemaVersion},
          {"kind", "rep_chain_map"},
          {"ring", ring_to_json(describe(f.source().ring()))},
          {"source", rep_complex_to_json(f.source())},
          {"target", rep_complex_to_json(f.target())},
          {"maps", std::move(maps)}};
}

/// s^i: X^i -> Y^{i-N+1}, keyed by the source degree.
template <class F>
json witness_to_json(const ChainMapN<F>& f, const HomotopyWitness<F>& w) {
  json s = json::object();
  for (const auto& [i, m] : w.s)
    if (!m.is_zero()) s[std::to_string(i)] = matrix_to_json(m);
  return {{"schema_version", kSchemaVersion},
          {"kind", "homotopy_witness"},
          {"ring", ring_to_json(describe(f.source().ring()))},
          {"map", chain_map_to_json(f)},
          {"s", std::move(s)}};
}

inline json quotient_to_json(const QuotientDim& q) {
  json j = {{"dim", q.dim}};
  if (!q.x_ranks.empty()) j["x_ranks"] = q.x_ranks;
  return j;
}

template <class F>
json homology_to_json(const NComplex<F>& x, const HomologyFingerprint& h) {
  json entries = json::object();
  for (const auto& [key, q] : h.entries) {
    auto [i, r] = key;
    entries[std::to_string(i)][std::to_string(r)] = quotient_to_json(q);
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "homology"},
          {"N", x.N()},
          {"ring", ring_to_json(describe(x.ring()))},
          {"support", support_to_json(x.support())},
          {"homology", std::move(entries)},
          {"exact", h.is_zero()}};
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ncx
