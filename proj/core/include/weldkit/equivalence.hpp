#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weldkit/gauss_diagram.hpp"
#include "weldkit/group.hpp"
#include "weldkit/magnus.hpp"

namespace weldkit {

// One step on a tuple of longitudes over mu_1..mu_n.
//
// conjugation (i, j, sign): every word goes through mu_i -> mu_j^s mu_i mu_j^-s,
//   then lambda_i <- mu_j^-s lambda_i mu_j^s, so mu_i stays the i-th meridian.
//   Requires i != j; (i, j, -s) undoes it.
// relator (i, j, sign, h) with j != i: lambda_i <- lambda_i h R h^-1 where
//   R = lambda_j^-1 mu_j^s lambda_j mu_j^-s is a conjugate of the peripheral
//   relator of component j. (i, j, -s, h mu_j^s) undoes it.
struct CertStep {
  enum class Kind { conjugation, relator };
  Kind kind = Kind::conjugation;
  int i = 0;
  int j = 0;
  int sign = 1;
  Word h;

  friend bool operator==(const CertStep&, const CertStep&) = default;
};

// lambda_i <- lambda_i g mu_i^sign g^-1.
struct CosetInsertion {
  Word g;
  int sign = 1;

  friend bool operator==(const CosetInsertion&, const CosetInsertion&) = default;
};

// Replayed against B in this order: steps, then per component the conjugator
// (lambda_i <- w^-1 lambda_i w, w must commute with mu_i in RF(n)), then the
// coset insertions. The outcome must be RF-equal to A's longitudes.
struct Certificate {
  int n = 0;
  std::vector<CertStep> steps;
  std::vector<Word> conjugators;
  std::vector<std::vector<CosetInsertion>> cosets;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws CertificateError when the step does not fit the tuple.
void apply_cert_step(std::vector<Word>& longitudes, const CertStep& step);
CertStep inverse_step(const CertStep& step);

// Throws CertificateError on malformed certificates (dangling indices, size
// mismatch). A conjugator that does not commute with its meridian makes the
// certificate invalid.
bool verify_certificate(const PeripheralSystem& a, const PeripheralSystem& b, const Certificate& c);

struct Witness {
  MilnorEntry a;
  MilnorEntry b;
};

std::optional<Witness> refute(const PeripheralSystem& a, const PeripheralSystem& b, int max_length);

struct SearchBounds {
  int conj_len = 4;      // elementary conjugations on a path
  int coset_max = 4;     // coset insertions per component
  int depth = 64;        // steps on a path
  int h_len = 1;         // length of relator conjugators tried
  std::size_t max_states = 20000;
  int threads = 0;       // 0: hardware concurrency
  int max_length = 0;    // residue length used to refute; 0: n
};

struct SearchStats {
  std::size_t states = 0;
  int depth_reached = 0;
};

struct Verdict {
  enum class Kind { equivalent, distinct, unknown };
  Kind kind = Kind::unknown;
  std::optional<Witness> witness;
  std::optional<Certificate> certificate;
  std::string reason;
  SearchStats stats;
};

std::string to_string(Verdict::Kind k);

// Refutes with the full residue table first, then searches both ways from A
// and B over projected longitude images.
Verdict search_certificate(const PeripheralSystem& a, const PeripheralSystem& b, const SearchBounds& bounds = {});

// Sorts both diagrams, reads their longitudes and searches.
Verdict sv_equivalent(const GaussDiagram& a, const GaussDiagram& b, const SearchBounds& bounds = {});

}  // namespace weldkit
