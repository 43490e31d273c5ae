#include "nbtower/tower_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nbtower/linalg.hpp"

namespace nbtower {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadInput, what); }

json coords_json(const Coords& c) { return json(c); }

json poly_json(const Poly& f) {
  json out = json::array();
  for (int i = 0; i <= f.degree(); ++i)
    for (auto v : f.coeff(static_cast<std::size_t>(i))) out.push_back(v);
  return out;
}

json row_json(const SparseRow& row) {
  json terms = json::array();
  for (const auto& t : row.terms) terms.push_back(json::array({t.index, coords_json(t.coeff)}));
  return json{{"constant", coords_json(row.constant)}, {"terms", terms}};
}

json table_json(const MultTable& t) {
  json rows = json::array();
  for (std::size_t i = 1; i < t.conjugates; ++i) {
    json r = row_json(t.row(i));
    r["index"] = i;
    rows.push_back(r);
  }
  return json{{"step", t.step},
              {"conjugates", t.conjugates},
              {"coefficient_field", t.coefficient_field == CoefficientField::Prime ? "prime" : "base"},
              {"generator", coords_json(t.generator.coords())},
              {"rows", rows},
              {"square_row", row_json(t.square_row)}};
}

json level_json(const TowerLevel& tl, std::size_t index) {
  const ASLevel& l = tl.level;
  return json{{"kind", "artin_schreier"},
              {"level", index},
              {"rel_degree", l.ctx->rel_degree()},
              {"abs_degree", l.ctx->abs_degree()},
              {"modulus", poly_json(l.ctx->modulus())},
              {"alpha", coords_json(l.alpha.coords())},
              {"h", l.h.value()},
              {"b", l.b.value()},
              {"normal_generator", coords_json(l.delta_inv.coords())},
              {"delta", coords_json(l.delta.coords())},
              {"tables", json{{"gamma", table_json(tl.gamma)}, {"delta", table_json(tl.delta)}}}};
}

json level_json(const KummerEntry& ke, std::size_t index) {
  const KummerLevel& k = ke.level;
  const auto& base = k.ctx->base();
  return json{{"kind", "kummer"},
              {"level", index},
              {"q", k.params.q},
              {"l", k.params.l},
              {"r", k.params.r},
              {"m", k.params.m},
              {"s", k.params.s},
              {"rel_degree", k.ctx->rel_degree()},
              {"abs_degree", k.ctx->abs_degree()},
              {"base_modulus", base->is_prime_field() ? json::array() : poly_json(base->modulus())},
              {"modulus", poly_json(k.ctx->modulus())},
              {"xi", coords_json(k.xi.coords())},
              {"zeta", coords_json(k.zeta.coords())},
              {"b", coords_json(k.b.coords())},
              {"normal_generator", coords_json(k.gamma.coords())},
              {"tables", json{{"kummer", table_json(ke.table)}}}};
}

// ---- reading

std::uint64_t get_uint(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    bad(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Coords read_coords(const json& v, const FieldCtx& ctx, const std::string& what) {
  if (!v.is_array() || v.size() != ctx.abs_degree())
    bad(what + ": expected " + std::to_string(ctx.abs_degree()) + " coordinates");
  Coords c;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= ctx.prime().value())
      bad(what + ": coordinates must be integers in [0, p)");
    c.push_back(x.get<std::uint32_t>());
  }
  return c;
}

Poly read_poly(const json& v, const CtxPtr& base, const std::string& what) {
  const std::size_t w = base->abs_degree();
  if (!v.is_array() || v.empty() || v.size() % w != 0) bad(what + ": length must be a positive multiple of " + std::to_string(w));
  std::vector<Coords> coeffs;
  for (std::size_t i = 0; i < v.size(); i += w) {
    json chunk(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i + w));
    coeffs.push_back(read_coords(chunk, *base, what));
  }
  Poly f(base, std::move(coeffs));
  if (f.degree() < 1 || !f.is_monic()) bad(what + ": modulus must be monic of degree >= 1");
  return f;
}

SparseRow read_row(const json& j, const FieldCtx& coeff_ctx, std::size_t conjugates, const std::string& what) {
  SparseRow row;
  row.constant = read_coords(j.at("constant"), coeff_ctx, what + " constant");
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2) bad(what + ": terms are [index, coefficient] pairs");
    if (!t[0].is_number_unsigned() || t[0].get<std::size_t>() >= conjugates) bad(what + ": term index out of range");
    row.terms.push_back({t[0].get<std::size_t>(), read_coords(t[1], coeff_ctx, what + " term")});
  }
  return row;
}

MultTable read_table(const json& j, const CtxPtr& ctx, const std::string& what) {
  MultTable t;
  t.generator = FieldElement(ctx, read_coords(j.at("generator"), *ctx, what + " generator"));
  t.step = get_uint(j, "step");
  t.conjugates = get_uint(j, "conjugates");
  if (t.conjugates != ctx->rel_degree() || t.step != ctx->base_abs_degree())
    bad(what + ": step and conjugates must match the level");
  const std::string field = j.at("coefficient_field").get<std::string>();
  if (field != "prime" && field != "base") bad(what + ": coefficient_field must be 'prime' or 'base'");
  t.coefficient_field = field == "prime" ? CoefficientField::Prime : CoefficientField::Base;
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() + 1 != t.conjugates) bad(what + ": expected one row per conjugate index >= 1");
  const FieldCtx& k = *ctx->base();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (get_uint(rows[i], "index") != i + 1) bad(what + ": rows must be listed by index 1, 2, ...");
    t.rows.push_back(read_row(rows[i], k, t.conjugates, what + " row " + std::to_string(i + 1)));
  }
  t.square_row = read_row(j.at("square_row"), k, t.conjugates, what + " square row");
  return t;
}

TowerLevel read_as_level(const json& j, const CtxPtr& base, std::uint32_t p, std::size_t index) {
  const std::string where = "level " + std::to_string(index);
  if (get_uint(j, "level") != index) bad(where + ": level numbers must run 1, 2, ...");
  const PrimeModulus pm(p);
  Poly modulus = read_poly(j.at("modulus"), base, where + " modulus");
  Coords alpha = read_coords(j.at("alpha"), *base, where + " alpha");
  CtxPtr e = FieldCtx::extension(base, modulus, ArtinSchreierKind{alpha});
  if (get_uint(j, "rel_degree") != e->rel_degree() || get_uint(j, "abs_degree") != e->abs_degree())
    bad(where + ": degrees disagree with the modulus");
  const std::uint64_t h = get_uint(j, "h"), b = get_uint(j, "b");
  if (h >= p || b >= p) bad(where + ": h and b must lie in [0, p)");
  const auto& tables = j.at("tables");
  TowerLevel tl{ASLevel{e,
                        FieldElement(base, alpha),
                        FpScalar(pm, static_cast<std::int64_t>(h)),
                        FieldElement::generator(e),
                        FieldElement::zero(e),
                        FieldElement(e, read_coords(j.at("normal_generator"), *e, where + " normal_generator")),
                        FieldElement(e, read_coords(j.at("delta"), *e, where + " delta")),
                        FpScalar(pm, static_cast<std::int64_t>(b))},
                read_table(tables.at("gamma"), e, where + " gamma table"),
                read_table(tables.at("delta"), e, where + " delta table")};
  tl.level.gamma = tl.gamma.generator;
  return tl;
}

KummerEntry read_kummer_level(const json& j, std::uint32_t p) {
  const std::string where = "kummer level";
  if (get_uint(j, "level") != 1) bad(where + ": a Kummer file holds a single level 1");
  KummerParams params;
  params.p = p;
  params.q = static_cast<std::uint32_t>(get_uint(j, "q"));
  params.l = static_cast<std::uint32_t>(get_uint(j, "l"));
  params.r = static_cast<std::uint32_t>(get_uint(j, "r"));
  params.m = get_uint(j, "m");
  params.s = static_cast<std::uint32_t>(get_uint(j, "s"));
  if (params.l == 0 || params.s == 0 || params.s > params.r) bad(where + ": need l >= 1 and 1 <= s <= r");
  CtxPtr prime = FieldCtx::prime_field(PrimeModulus(p));
  CtxPtr base = prime;
  const auto& bm = j.at("base_modulus");
  if (params.l > 1) {
    base = FieldCtx::extension(prime, read_poly(bm, prime, where + " base_modulus"));
    if (base->abs_degree() != params.l) bad(where + ": base_modulus degree must be l");
  } else if (!bm.is_array() || !bm.empty()) {
    bad(where + ": base_modulus must be empty when l = 1");
  }
  Coords xi = read_coords(j.at("xi"), *base, where + " xi");
  Poly modulus = read_poly(j.at("modulus"), base, where + " modulus");
  CtxPtr e = FieldCtx::extension(base, modulus, KummerKind{xi, params.q, params.s});
  if (get_uint(j, "rel_degree") != e->rel_degree() || get_uint(j, "abs_degree") != e->abs_degree())
    bad(where + ": degrees disagree with the modulus");
  KummerEntry ke;
  ke.level.params = params;
  ke.level.ctx = e;
  ke.level.xi = FieldElement(base, xi);
  ke.level.zeta = FieldElement(base, read_coords(j.at("zeta"), *base, where + " zeta"));
  ke.level.b = FieldElement(base, read_coords(j.at("b"), *base, where + " b"));
  ke.level.alpha = FieldElement::generator(e);
  ke.level.gamma = FieldElement(e, read_coords(j.at("normal_generator"), *e, where + " normal_generator"));
  ke.table = read_table(j.at("tables").at("kummer"), e, where + " table");
  return ke;
}

// ---- verification helpers

void compare_tables(VerificationReport& r, const MultTable& stored, const MultTable& expected,
                    const std::string& label) {
  r.check(stored.generator == expected.generator, label + " generator matches the closed form", label);
  r.check(stored.coefficient_field == expected.coefficient_field, label + " coefficient field flag", label);
  for (std::size_t i = 0; i < expected.conjugates; ++i) {
    const std::string name = i == 0 ? label + " square row" : label + " row " + std::to_string(i);
    r.check(stored.row(i) == expected.row(i), name + " matches the closed form", name);
  }
}

void run_oracle(VerificationReport& r, const std::string& label, const Poly& modulus) {
  const std::size_t total = static_cast<std::size_t>(modulus.degree()) * modulus.field()->abs_degree();
  if (total > max_degree()) return;
  r.check(oracle::is_irreducible_bruteforce(modulus), label + " modulus irreducible (oracle)", modulus.to_string());
}

void verify_as(VerificationReport& r, const TowerLevel& tl, const FieldElement* prev_delta, bool deep) {
  const ASLevel& l = tl.level;
  const std::string where = "level " + std::to_string(l.ctx->depth());
  VerificationReport inv = verify_as_level(l);
  r.merge(inv);
  r.merge(verify_beta_conjugates(l));
  if (prev_delta)
    r.check(l.alpha == *prev_delta, where + " alpha is the previous level's delta", where);
  else
    r.check(l.alpha.coords() == l.alpha.ctx()->one(), where + " alpha = 1", where);
  r.check(l.gamma == ext_inv(l.beta), where + " gamma table generator is beta^-1", where);
  r.check(l.delta_inv == tl.delta.generator, where + " delta table generator is delta^-1", where);
  r.merge(verify_table(tl.gamma, where + " gamma"));
  r.merge(verify_table(tl.delta, where + " delta"));
  if (inv.ok()) {
    compare_tables(r, tl.gamma, gamma_table(l), where + " gamma");
    compare_tables(r, tl.delta, delta_table(l), where + " delta");
  }
  run_oracle(r, where, l.ctx->modulus());
  if (l.ctx->abs_degree() <= max_degree() && inv.ok()) r.merge(oracle::verify_reciprocal_relations(l));
  if (deep) {
    r.merge(verify_full_table(tl.gamma, where + " gamma"));
    r.merge(verify_full_table(tl.delta, where + " delta"));
  }
}

void verify_kummer(VerificationReport& r, const KummerEntry& ke, bool deep) {
  const KummerLevel& k = ke.level;
  const std::string where = "kummer level";
  try {
    KummerParams fresh = kummer_params(k.params.p, k.params.q, k.params.l, k.params.s);
    r.check(fresh == k.params, where + " r and m match p^l - 1 = m q^r", where);
  } catch (const Error& e) {
    r.check(false, where + " parameters are valid", where, "valid", e.what());
    return;
  }
  const auto& base = k.ctx->base();
  if (!base->is_prime_field()) run_oracle(r, where + " base", base->modulus());
  run_oracle(r, where, k.ctx->modulus());
  std::vector<Coords> coeffs(k.params.degree() + 1, base->zero());
  coeffs[0] = base->neg(k.xi.coords());
  coeffs.back() = base->one();
  r.check(k.ctx->modulus() == Poly(base, coeffs), where + " modulus is x^(q^s) - xi", where);
  const FieldElement one = FieldElement::one(base);
  r.check(k.xi.pow(k.params.q_pow(k.params.r)) == one && !(k.xi.pow(k.params.q_pow(k.params.r - 1)) == one),
          where + " xi has order q^r", k.xi.to_string());
  r.check(k.zeta == k.xi.pow(k.params.m * k.params.q_pow(k.params.r - k.params.s)),
          where + " zeta = xi^(m q^(r-s))", k.zeta.to_string());
  r.check(!k.b.is_zero() && !(k.b.pow(k.params.degree()) == k.xi), where + " b != 0 and b^(q^s) != xi",
          k.b.to_string());
  r.check(k.gamma == ext_inv(k.alpha - FieldElement::embed(k.ctx, k.b)), where + " normal generator is (alpha - b)^-1",
          where);
  VerificationReport lvl = verify_kummer_level(k);
  r.merge(lvl);
  r.check(kummer_normality(k), where + " gamma normal over the base", where);
  r.merge(verify_table(ke.table, where));
  if (lvl.ok()) compare_tables(r, ke.table, kummer_table(k), where);
  if (deep) r.merge(verify_full_table(ke.table, where));
}

}  // namespace

TowerFile tower_file(const TowerSpec& spec) {
  TowerFile f{spec.p.value(), {}};
  for (const auto& l : spec.levels) f.levels.emplace_back(l);
  return f;
}

TowerFile tower_file(const KummerLevel& level) {
  TowerFile f{level.params.p, {}};
  f.levels.emplace_back(KummerEntry{level, kummer_table(level)});
  return f;
}

std::string save(const TowerFile& file) {
  json levels = json::array();
  for (std::size_t i = 0; i < file.levels.size(); ++i)
    levels.push_back(std::visit([&](const auto& l) { return level_json(l, i + 1); }, file.levels[i]));
  json j{{"format_version", kFormatVersion}, {"p", file.p}, {"levels", levels}};
  return j.dump(2) + "\n";
}

TowerFile load(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) bad("top level must be an object");
    if (get_uint(j, "format_version") != kFormatVersion) bad("unsupported format_version");
    const std::uint64_t p = get_uint(j, "p");
    if (p >= PrimeModulus::kLimit || !is_prime(p)) bad("p must be prime and below 2^16");
    TowerFile f{static_cast<std::uint32_t>(p), {}};
    const auto& levels = j.at("levels");
    if (!levels.is_array() || levels.empty()) bad("levels must be a non-empty array");
    CtxPtr base = FieldCtx::prime_field(PrimeModulus(f.p));
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const std::string kind = levels[i].at("kind").get<std::string>();
      if (kind == "artin_schreier") {
        TowerLevel tl = read_as_level(levels[i], base, f.p, i + 1);
        base = tl.level.ctx;
        f.levels.emplace_back(std::move(tl));
      } else if (kind == "kummer") {
        if (levels.size() != 1) bad("a Kummer level must be the only level in its file");
        f.levels.emplace_back(read_kummer_level(levels[i], f.p));
      } else {
        bad("unknown level kind '" + kind + "'");
      }
    }
    return f;
  } catch (const json::exception& e) {
    bad(std::string("malformed tower file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadInput) throw;
    bad(std::string("invalid tower file: ") + e.what());
  }
}

void save_file(const TowerFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot open '" + path + "' for writing");
  out << save(file);
  if (!out) bad("failed writing '" + path + "'");
}

TowerFile load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

VerificationReport verify_file(const TowerFile& file, bool deep) {
  VerificationReport r;
  const FieldElement* prev = nullptr;
  for (std::size_t i = 0; i < file.levels.size(); ++i) {
    const auto& entry = file.levels[i];
    // Corrupted data can make the arithmetic itself fail (a zero inverse, say).
    try {
      if (const auto* tl = std::get_if<TowerLevel>(&entry)) {
        verify_as(r, *tl, prev, deep);
        prev = &tl->level.delta;
      } else {
        verify_kummer(r, std::get<KummerEntry>(entry), deep);
      }
    } catch (const Error& e) {
      r.check(false, "level " + std::to_string(i + 1) + " verification ran to completion", "level " + std::to_string(i + 1),
              "no error", e.what());
    }
  }
  return r;
}

}  // namespace nbtower
