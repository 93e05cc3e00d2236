#pragma once

#include <string>

#include "dblcat/checks.hpp"
#include "dblcat/functors.hpp"

namespace dbl::doc {

// Line-oriented text format; see docs/format.md for the grammar. Serialization
// is canonical: cells in id order, directives in a fixed order, so
// serialize(parse(serialize(x))) == serialize(x) byte for byte.
std::string serialize(const FinDoubleCategory& d);
std::string serialize(const FinTwoCategory& c);
std::string serialize(const DoubleFunctor& f);
std::string serialize(const TwoFunctor& f);

DblPresentation parse_double(const std::string& text);
TwoPresentation parse_two(const std::string& text);

// Resolves "corpus:NAME", "file:PATH" or a document name defined in `text`
// (for functor endpoints). Loaders seal via the validators.
DblPtr load_double(const std::string& spec);
TwoPtr load_two(const std::string& spec);
DoubleFunctor load_double_functor(const std::string& text);
TwoFunctor load_two_functor(const std::string& text);

// Loads whatever the argument denotes: "corpus:NAME", "file:PATH" (whose
// first document decides the kind) or raw document text.
enum class Kind { Double, Two, DoubleFunctor, TwoFunctor };
Kind peek_kind(const std::string& spec);

std::string render_report_text(const CheckReport& rep);
std::string render_report_json(const CheckReport& rep);
CheckReport parse_report_json(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace dbl::doc
