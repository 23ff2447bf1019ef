#include "cpipe/appendix.hpp"

#include "cpipe/errors.hpp"
#include "cpipe/exact_linear.hpp"

#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace cpipe {

const std::array<const char*, kNumF> kFNames = {"f2^00", "f2^20", "f2^02", "f2^22", "f2^40",
                                                "f2^04", "f3^00", "f3^11", "f3^20", "f3^02"};

namespace {

using F = FCoeff;

struct Term {
  FCoeff f;
  long long num;
  long long den;
};

FForm form(std::initializer_list<Term> terms) {
  FForm r;
  r.fill(Rational(0));
  for (const auto& t : terms) r[static_cast<std::size_t>(t.f)] += make_rational(t.num, t.den);
  return r;
}

FForm zero_form() { return form({}); }

// (m, n) in the printed ansatz order: by degree, then decreasing power of z2
std::vector<std::pair<int, int>> ansatz_monomials(int min_degree, int max_degree) {
  std::vector<std::pair<int, int>> r;
  for (int d = min_degree; d <= max_degree; ++d) {
    for (int m = d; m >= 0; --m) r.emplace_back(m, d - m);
  }
  return r;
}

// The F shape of the ansatz.
const std::array<std::tuple<int, int, int>, kNumF> kFMonomials = {{
    {2, 0, 0}, {2, 2, 0}, {2, 0, 2}, {2, 2, 2}, {2, 4, 0}, {2, 0, 4},
    {3, 0, 0}, {3, 1, 1}, {3, 2, 0}, {3, 0, 2},
}};

std::vector<TableEntry> build_printed() {
  using Fd = TableEntry::Field;
  std::vector<TableEntry> t = {
      // W1
      {Fd::w2, 0, 0, form({{F::f3_11, 1, 192}, {F::f2_04, -1, 192}, {F::f2_22, -1, 1152}, {F::f2_02, -1, 96}})},
      {Fd::w2, 0, 4, form({{F::f2_04, 7, 240}, {F::f2_22, -7, 2880}})},
      {Fd::w2, 0, 2,
       form({{F::f2_02, 5, 96}, {F::f2_04, 13, 960}, {F::f2_02, 31, 5760}, {F::f3_11, -5, 192}})},
      {Fd::w2, 1, 1, form({{F::f3_20, -1, 24}})},
      {Fd::w2, 2, 0, form({{F::f2_02, 1, 96}, {F::f2_04, 7, 960}, {F::f2_22, -11, 5760}, {F::f3_11, -1, 192}})},
      {Fd::w2, 2, 2, form({{F::f2_04, 1, 480}, {F::f2_22, 37, 2880}})},
      {Fd::w2, 4, 0, form({{F::f2_22, 1, 360}, {F::f2_04, -1, 480}})},
      {Fd::w3, 0, 0, form({{F::f3_20, -1, 96}})},
      {Fd::w3, 1, 1, form({{F::f2_22, 1, 480}, {F::f2_04, -1, 40}, {F::f2_02, -1, 24}, {F::f3_11, 1, 48}})},
      {Fd::w3, 0, 2, form({{F::f3_20, 1, 96}})},
      {Fd::w3, 1, 3, form({{F::f2_04, -1, 80}, {F::f2_22, -1, 240}})},
      {Fd::w3, 2, 0, form({{F::f3_20, 5, 96}})},
      {Fd::w3, 3, 1, form({{F::f2_04, 1, 80}, {F::f2_22, -1, 60}})},
      // q1
      {Fd::q, 1, 0,
       form({{F::f3_11, 1, 12}, {F::f2_02, -1, 6}, {F::f2_04, -1, 16}, {F::f2_22, -1, 96}, {F::f2_00, -1, 1}})},
      {Fd::q, 0, 3, form({{F::f3_20, 1, 12}, {F::f3_02, -1, 3}})},
      {Fd::q, 1, 2, form({{F::f2_22, 3, 40}, {F::f2_04, -3, 20}, {F::f2_02, -1, 4}, {F::f3_11, -3, 8}})},
      {Fd::q, 0, 1, form({{F::f3_00, -1, 1}, {F::f3_20, -1, 6}})},
      {Fd::q, 1, 4, form({{F::f2_04, -1, 16}, {F::f2_22, -5, 96}})},
      {Fd::q, 2, 1, form({{F::f3_20, -1, 4}})},
      {Fd::q, 3, 0,
       form({{F::f2_02, 1, 12}, {F::f2_04, 1, 20}, {F::f2_20, -1, 3}, {F::f2_22, -1, 40}, {F::f3_11, -1, 24}})},
      {Fd::q, 3, 2, form({{F::f2_04, 1, 8}, {F::f2_22, -11, 48}})},
      {Fd::q, 5, 0, form({{F::f2_22, 11, 480}, {F::f2_04, -1, 80}, {F::f2_40, -1, 5}})},
  };
  // W2 and q22: printed zeros
  for (auto [m, n] : std::initializer_list<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 0}, {1, 2}, {1, 3}, {2, 1}, {3, 0}, {3, 1}}) {
    t.push_back({Fd::w2, m, n, zero_form()});
  }
  for (auto [m, n] :
       std::initializer_list<std::pair<int, int>>{{0, 1}, {0, 3}, {0, 4}, {1, 0}, {1, 2}, {2, 1}, {2, 2}, {3, 0}, {4, 0}}) {
    t.push_back({Fd::w3, m, n, zero_form()});
  }
  for (auto [m, n] : std::initializer_list<std::pair<int, int>>{
           {0, 2}, {0, 4}, {0, 5}, {1, 1}, {1, 3}, {2, 0}, {2, 2}, {2, 3}, {3, 1}, {4, 0}, {4, 1}}) {
    t.push_back({Fd::q, m, n, zero_form()});
  }
  return t;
}

std::map<std::string, FForm> corrections() {
  return {{"w2^02", form({{F::f2_02, 5, 96}, {F::f2_04, 13, 960}, {F::f2_22, 31, 5760}, {F::f3_11, -5, 192}})}};
}

}  // namespace

std::string to_string(const FForm& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t a = 0; a < kNumF; ++a) {
    if (f[a] == 0) continue;
    Rational c = f[a];
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (c != 1) os << c.str() << "*";
    os << kFNames[a];
  }
  return first ? "0" : os.str();
}

std::string TableEntry::name() const {
  const char* f = field == Field::w2 ? "w2" : field == Field::w3 ? "w3" : "q";
  return std::string(f) + "^" + std::to_string(m) + std::to_string(n);
}

const std::vector<TableEntry>& printed_tables() {
  static const std::vector<TableEntry> t = build_printed();
  return t;
}

const std::vector<Erratum>& table_errata() {
  static const std::vector<Erratum> e = {
      {"w2^02", "5/96 f2^02 + 13/960 f2^04 + 31/5760 f2^02 - 5/192 f3^11",
       "5/96 f2^02 + 13/960 f2^04 + 31/5760 f2^22 - 5/192 f3^11"},
  };
  return e;
}

const std::vector<TableEntry>& corrected_tables() {
  static const std::vector<TableEntry> t = [] {
    auto r = printed_tables();
    const auto fix = corrections();
    for (auto& e : r) {
      if (auto it = fix.find(e.name()); it != fix.end()) e.form = it->second;
    }
    return r;
  }();
  return t;
}

AppendixReport verify_appendix_tables() {
  using P = DiscPoly<Rational>;
  const auto wm = ansatz_monomials(0, 4);
  const auto qm = ansatz_monomials(1, 5);
  const P bubble = P::rho2() - P::constant(Rational(1));

  // unknown j -> contributions to (x-momentum, y-momentum, divergence)
  struct Col {
    TableEntry::Field field;
    int m, n;
    std::array<P, 3> eq;
  };
  std::vector<Col> cols;
  for (auto [m, n] : wm) {
    const P w = P::monomial(m, n) * bubble;
    cols.push_back({TableEntry::Field::w2, m, n, {laplacian(w), P(), differentiate(w, Var::z2)}});
  }
  for (auto [m, n] : wm) {
    const P w = P::monomial(m, n) * bubble;
    cols.push_back({TableEntry::Field::w3, m, n, {P(), laplacian(w), differentiate(w, Var::z3)}});
  }
  for (auto [m, n] : qm) {
    const P q = P::monomial(m, n);
    cols.push_back({TableEntry::Field::q, m, n, {-differentiate(q, Var::z2), -differentiate(q, Var::z3), P()}});
  }

  // one row per (equation, monomial)
  std::set<std::tuple<int, int, int>> rowset;
  for (const auto& c : cols) {
    for (int e = 0; e < 3; ++e) {
      for (const auto& [mn, v] : c.eq[static_cast<std::size_t>(e)].terms()) rowset.insert({e, mn.first, mn.second});
    }
  }
  for (const auto& [eq, m, n] : kFMonomials) rowset.insert({eq - 2, m, n});
  const std::vector<std::tuple<int, int, int>> rows(rowset.begin(), rowset.end());

  std::vector<std::vector<Rational>> A(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto [e, m, n] = rows[r];
    for (std::size_t j = 0; j < cols.size(); ++j) A[r][j] = cols[j].eq[static_cast<std::size_t>(e)].coeff(m, n);
  }

  AppendixReport rep;
  rep.unknowns = cols.size();
  rep.equations = rows.size();
  rep.errata = table_errata();
  std::vector<FForm> solved(cols.size());
  for (auto& f : solved) f.fill(Rational(0));
  rep.unique = true;
  for (std::size_t a = 0; a < kNumF; ++a) {
    const auto [eq, fm, fn] = kFMonomials[a];
    std::vector<Rational> b(rows.size(), Rational(0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r] == std::make_tuple(eq - 2, fm, fn)) b[r] = Rational(1);
    }
    const auto res = solve_exact(A, b, cols.size());
    rep.rank = res.rank;
    if (res.status != ExactSolveResult::Status::unique) {
      rep.unique = false;
      return rep;
    }
    for (std::size_t j = 0; j < cols.size(); ++j) solved[j][a] = res.x[j];
  }

  std::map<std::string, FForm> by_name;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    TableEntry e{cols[j].field, cols[j].m, cols[j].n, solved[j]};
    by_name[e.name()] = solved[j];
  }
  const auto& printed = printed_tables();
  const auto& corrected = corrected_tables();
  for (std::size_t i = 0; i < printed.size(); ++i) {
    AppendixReport::Row row;
    row.name = printed[i].name();
    row.printed = to_string(printed[i].form);
    const auto it = by_name.find(row.name);
    if (it == by_name.end()) {
      row.solved = "(not an ansatz unknown)";
    } else {
      row.solved = to_string(it->second);
      row.matches_printed = it->second == printed[i].form;
      row.matches_corrected = it->second == corrected[i].form;
    }
    if (!row.matches_printed) ++rep.mismatches_printed;
    if (!row.matches_corrected) ++rep.mismatches_corrected;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

template <class T>
std::array<T, kNumF> extract_f(const VecPoly<T>& F) {
  std::array<T, kNumF> f{};
  f.fill(T(0));
  std::array<std::set<std::pair<int, int>>, 2> allowed;
  for (std::size_t a = 0; a < kNumF; ++a) {
    const auto [eq, m, n] = kFMonomials[a];
    const auto& P = eq == 2 ? F.x : F.y;
    f[a] = P.coeff(m, n);
    allowed[static_cast<std::size_t>(eq - 2)].insert({m, n});
  }
  for (int c = 0; c < 2; ++c) {
    for (const auto& [mn, v] : (c == 0 ? F.x : F.y).terms()) {
      if (!allowed[static_cast<std::size_t>(c)].contains(mn)) {
        throw ModelError("right side F" + std::to_string(c + 2) + " has a monomial z2^" + std::to_string(mn.first) +
                             " z3^" + std::to_string(mn.second) + " outside the polynomial ansatz",
                         to_double(v));
      }
    }
  }
  return f;
}

template <class T>
StokesPart<T> apply_tables(const VecPoly<T>& F) {
  const auto f = extract_f(F);
  DiscPoly<T> w2, w3;
  StokesPart<T> out;
  for (const auto& e : corrected_tables()) {
    T c(0);
    for (std::size_t a = 0; a < kNumF; ++a) {
      if (e.form[a] != 0) c += from_rational<T>(e.form[a]) * f[a];
    }
    switch (e.field) {
      case TableEntry::Field::w2: w2.add_term(e.m, e.n, c); break;
      case TableEntry::Field::w3: w3.add_term(e.m, e.n, c); break;
      case TableEntry::Field::q: out.q.add_term(e.m, e.n, c); break;
    }
  }
  const DiscPoly<T> bubble = DiscPoly<T>::rho2() - DiscPoly<T>::constant(T(1));
  out.W = {w2 * bubble, w3 * bubble};
  return out;
}

template std::array<double, kNumF> extract_f(const VecPoly<double>&);
template std::array<Rational, kNumF> extract_f(const VecPoly<Rational>&);
template StokesPart<double> apply_tables(const VecPoly<double>&);
template StokesPart<Rational> apply_tables(const VecPoly<Rational>&);

}  // namespace cpipe
