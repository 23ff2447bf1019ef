#ifndef CPIPE_APPENDIX_HPP
#define CPIPE_APPENDIX_HPP

// Polynomial Stokes solve on the unit disc for a right side F of the shape
//   F2 = f2^00 + f2^20 z2^2 + f2^02 z3^2 + f2^22 z2^2 z3^2 + f2^40 z2^4 + f2^04 z3^4
//   F3 = f3^00 + f3^11 z2 z3 + f3^20 z2^2 + f3^02 z3^2
// with W = (quartic) * (z2^2 + z3^2 - 1) and a quintic q (q^00 = 0):
//   Delta W = grad q + F,  div W = 0,  W = 0 on the circle.

#include "cpipe/polydisc.hpp"
#include "cpipe/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace cpipe {

/// The ten f coefficients, in this order.
enum class FCoeff { f2_00, f2_20, f2_02, f2_22, f2_40, f2_04, f3_00, f3_11, f3_20, f3_02 };
inline constexpr std::size_t kNumF = 10;
extern const std::array<const char*, kNumF> kFNames;

/// Linear form sum_a c_a f_a over the f coefficients.
using FForm = std::array<Rational, kNumF>;

std::string to_string(const FForm& form);

/// One table coefficient: w2^{mn}, w3^{mn} or q^{mn} as a linear form in f.
struct TableEntry {
  enum class Field { w2, w3, q };
  Field field;
  int m;
  int n;
  FForm form;
  std::string name() const;  // e.g. "w2^02"
};

/// Every w/q coefficient exactly as printed (zeros included), 50 entries.
const std::vector<TableEntry>& printed_tables();

struct Erratum {
  std::string coefficient;
  std::string printed;
  std::string corrected;
};

/// Known misprints, with their corrections.
const std::vector<Erratum>& table_errata();

/// printed_tables() with the errata applied.
const std::vector<TableEntry>& corrected_tables();

struct AppendixReport {
  struct Row {
    std::string name;
    std::string printed;
    std::string solved;
    bool matches_printed = false;
    bool matches_corrected = false;
  };
  bool unique = false;         // ansatz system has a unique solution
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::vector<Row> rows;
  std::size_t mismatches_printed = 0;
  std::size_t mismatches_corrected = 0;
  std::vector<Erratum> errata;
};

/// Substitutes the ansatz into the Stokes problem and solves the exact linear
/// system once per unit f basis vector, then compares against the tables.
AppendixReport verify_appendix_tables();

/// f coefficients of F; throws ModelError if F has a monomial outside the shape.
template <class T>
std::array<T, kNumF> extract_f(const VecPoly<T>& F);

template <class T>
struct StokesPart {
  VecPoly<T> W;
  DiscPoly<T> q;
};

/// W and q from the (corrected) tables.
template <class T>
StokesPart<T> apply_tables(const VecPoly<T>& F);

}  // namespace cpipe

#endif
