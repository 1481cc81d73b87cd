#pragma once

// Text syntax for operator words, cell terms and the presentation, globular
// presentation and cover file formats. Printers and parsers round-trip.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cubical/cells.hpp"
#include "cubical/colimits.hpp"
#include "cubical/globular.hpp"

namespace cubical {

/// Dimension of a generator name, or nullopt when unknown.
using DimLookup = std::function<std::optional<int>(const std::string&)>;

DimLookup dims_of(const Presentation& p);

/// "@dim=n op.op...". Throws ParseError, or DimensionMismatch naming the
/// first operator that is undefined at its intermediate dimension.
OperatorWord parse_word(std::string_view text);

/// gen(x), apply(ops, t), compN(a, b), invN(a). Composability is not checked.
Cell parse_term(std::string_view text, const DimLookup& dims);
Cell parse_term(std::string_view text, const Presentation& p);

/// A word when the text starts with '@', a term otherwise.
std::variant<Cell, OperatorWord> parse_term_or_word(std::string_view text, const DimLookup& dims);

/// Whether `name` is usable as a generator name in the file formats.
bool valid_generator_name(std::string_view name);

Presentation parse_presentation(std::string_view text);
std::string print_presentation(const Presentation& p);

GlobularPresentation parse_globular_presentation(std::string_view text);
std::string print_globular_presentation(const GlobularPresentation& p);

CoverDiagram parse_cover(std::string_view text);
std::string print_cover(const CoverDiagram& c, const std::string& name = "cover");

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace cubical
