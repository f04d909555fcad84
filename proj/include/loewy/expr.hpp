#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loewy/algebra.hpp"
#include "loewy/basis.hpp"

namespace loewy {

// Element expressions:
//
//   elem   := sum
//   sum    := prod (("+" | "-") prod)*
//   prod   := unary ("*" unary)*
//   unary  := "-" unary | atom
//   atom   := scalar | "one" | "zero" | "e[" coord "]" | "b(" idxpath ")"
//           | "{" (coord ":" elem),* ";" tail "}" | "<" elem ("," elem)* ">"
//           | "(" elem ")"
//   scalar := natural ("/" natural)? | "x" ("^" natural)? | "[" field-literal "]"
//
// `a - b` is read as a + (-b). A scalar k stands for k * 1, so `k * elem` is
// an ordinary product. The tail of a literal is a field literal running to
// the closing brace. Tuple literals give the factors of B(level, n).

enum class ExprKind : std::uint8_t { Scalar, One, Zero, Basic, Basis, Literal, Tuple, Add, Mul, Neg };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Zero;
  FieldValue scalar;                  // Scalar; tail of Literal
  Ordinal coord;                      // Basic
  BasisIndex index;                   // Basis
  std::vector<Ordinal> coords;        // Literal, parallel to args
  std::vector<ExprPtr> args;          // Literal, Tuple, Add, Mul, Neg

  static ExprPtr make_scalar(FieldValue k);
  static ExprPtr one();
  static ExprPtr zero();
  static ExprPtr basic(Ordinal coord);
  static ExprPtr basis(BasisIndex idx);
  static ExprPtr literal(std::vector<std::pair<Ordinal, ExprPtr>> entries, FieldValue tail);
  static ExprPtr tuple(std::vector<ExprPtr> factors);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr neg(ExprPtr a);
};

bool expr_equal(const Expr& a, const Expr& b);

/// Throws ParseError with the byte offset of the problem.
ExprPtr parse_expr(const FieldDescriptor& f, std::string_view src);

/// Canonical text; parse_expr(f, print_expr(e)) is structurally equal to e.
std::string print_expr(const Expr& e);

/// Evaluates in B(desc.level, desc.width). Throws Error(Type) naming the
/// offending coordinate or level for ill-typed expressions.
TupleElement eval_expr(const AlgebraDescriptor& desc, const Expr& e);

/// Random syntax tree with at most `depth` nested operators. Coordinates and
/// indices are syntactic only; the tree need not be well typed.
ExprPtr random_expr(const FieldDescriptor& f, Rng& rng, int depth);

}  // namespace loewy
