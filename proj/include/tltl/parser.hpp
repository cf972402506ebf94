#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tltl/formula.hpp"

namespace tltl {

enum class ParseErrorKind { SyntaxError, IllegalConstraint, NegativeConstant };

const char* to_string(ParseErrorKind k);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t pos, const std::string& msg);
    ParseErrorKind kind() const { return kind_; }
    /// Byte offset into the source text.
    std::size_t position() const { return pos_; }

private:
    ParseErrorKind kind_;
    std::size_t pos_;
};

/// Parses the concrete syntax:
///
///   formula  ::= ["forall" ident+ "."] iff
///   iff      ::= imp ("<->" imp)*
///   imp      ::= or ["->" imp]
///   or       ::= and ("|" and)*
///   and      ::= until ("&" until)*
///   until    ::= unary ["U" until]
///   unary    ::= ("!" | "X" | "F" | "G") unary | primary
///   primary  ::= "(" iff ")" | "true" | "false" | ident | constraint
///   constraint ::= "x" ("<" | "=" | "<=") "y"
///                | "x" ("<" | "=" | ">" | "<=" | ">=") term
///   term     ::= ident ["+" int] | int
///
/// Free timing variables are bound in order of first occurrence.
QuantifiedFormula parse(std::string_view text);

/// Convenience: parse and return only the body.
Formula parse_formula(std::string_view text);

}  // namespace tltl
