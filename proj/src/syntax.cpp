#include "cubical/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cubical/errors.hpp"

namespace cubical {

namespace {

bool name_char(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '.' || c == '/' || c == '*' || c == '+' ||
         c == '-' || c == '\'';
}

// Character stream over one piece of text with 1-based positions.
class Cursor {
 public:
  explicit Cursor(std::string_view text, int line = 1, int column = 1)
      : text_(text), line_(line), column_(column) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  int line() const { return line_; }
  int column() const { return column_; }
  std::string where() const { return std::to_string(line_) + ":" + std::to_string(column_); }

  char next() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) next();
  }

  ParseError error(const std::string& what) const { return ParseError(what, line_, column_); }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      throw error(std::string("expected '") + c + "'" + found());
    }
    next();
  }

  bool eat(char c) {
    skip_ws();
    if (peek() != c) return false;
    next();
    return true;
  }

  bool eat_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    for (std::size_t k = 0; k < kw.size(); ++k) next();
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!eat_keyword(kw)) throw error("expected '" + std::string(kw) + "'" + found());
  }

  // Decimal numeral without leading zeros.
  int number() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw error("expected a number" + found());
    const Cursor start = *this;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += next();
    if (digits.size() > 1 && digits[0] == '0') throw start.error("leading zero in '" + digits + "'");
    if (digits.size() > 6) throw start.error("number '" + digits + "' is too large");
    return std::stoi(digits);
  }

  // Positive index such as an operator index or a composition direction.
  int index() {
    skip_ws();
    const Cursor start = *this;
    const int i = number();
    if (i < 1) throw start.error("index must be at least 1");
    return i;
  }

  std::string name() {
    skip_ws();
    std::string out;
    while (!done() && name_char(peek())) out += next();
    if (out.empty()) throw error("expected a name" + found());
    return out;
  }

  // Remaining text with surrounding blanks removed.
  std::string rest() {
    skip_ws();
    std::string out(text_.substr(pos_));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    while (!done()) next();
    return out;
  }

  void expect_end() {
    skip_ws();
    if (!done()) throw error("unexpected trailing input" + found());
  }

 private:
  std::string found() const {
    if (done()) return ", found end of input";
    return std::string(", found '") + peek() + "'";
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

struct PositionedOp {
  Operator op;
  std::string where;
};

std::vector<PositionedOp> parse_ops(Cursor& in) {
  std::vector<PositionedOp> ops;
  in.skip_ws();
  do {
    in.skip_ws();
    const std::string where = in.where();
    const Cursor start = in;
    const char letter = in.done() ? '\0' : in.next();
    OpKind kind;
    switch (letter) {
      case 'd':
        kind = OpKind::Face;
        break;
      case 'e':
        kind = OpKind::Degen;
        break;
      case 'g':
      case 'G':
        kind = OpKind::Conn;
        break;
      default:
        throw start.error("expected an operator d, e or g");
    }
    if (!std::isdigit(static_cast<unsigned char>(in.peek()))) throw in.error("expected an operator index");
    const int i = in.index();
    Operator op{kind, i, Sign::Plus};
    if (kind != OpKind::Degen) {
      const char s = in.peek();
      if (s != '+' && s != '-') throw in.error("expected a sign '+' or '-'");
      in.next();
      op.sign = s == '+' ? Sign::Plus : Sign::Minus;
    } else if (in.peek() == '+' || in.peek() == '-') {
      throw in.error("degeneracies take no sign");
    }
    ops.push_back({op, where});
  } while (in.peek() == '.' && (in.next(), true));
  return ops;
}

// Applies the operators right to left from `domain`, naming the first one
// that is undefined.
OperatorWord checked_word(const std::vector<PositionedOp>& ops, int domain) {
  int dim = domain;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (!it->op.valid_on(dim)) {
      throw DimensionMismatch("operator " + to_string(it->op) + " at " + it->where +
                              " is undefined on dimension " + std::to_string(dim));
    }
    dim += it->op.delta();
  }
  std::vector<Operator> plain;
  for (const auto& p : ops) plain.push_back(p.op);
  return OperatorWord(std::move(plain), domain);
}

OperatorWord word_from(Cursor& in) {
  in.expect('@');
  in.expect_keyword("dim");
  in.expect('=');
  const int domain = in.number();
  in.skip_ws();
  if (in.done()) return OperatorWord::identity(domain);
  return checked_word(parse_ops(in), domain);
}

Cell term_from(Cursor& in, const DimLookup& dims) {
  in.skip_ws();
  const Cursor start = in;
  if (in.eat_keyword("gen")) {
    in.expect('(');
    const Cursor at = in;
    const std::string name = in.name();
    const std::optional<int> d = dims(name);
    if (!d) throw at.error("unknown generator '" + name + "'");
    in.expect(')');
    return Cell::gen(name, *d);
  }
  if (in.eat_keyword("apply")) {
    in.expect('(');
    const std::vector<PositionedOp> ops = parse_ops(in);
    in.expect(',');
    const Cell arg = term_from(in, dims);
    in.expect(')');
    return Cell::apply(checked_word(ops, arg.dim()), arg);
  }
  const bool comp = in.eat_keyword("comp");
  if (comp || in.eat_keyword("inv")) {
    if (!std::isdigit(static_cast<unsigned char>(in.peek()))) throw in.error("expected a direction");
    const int j = in.index();
    in.expect('(');
    const Cell a = term_from(in, dims);
    Cell b;
    if (comp) {
      in.expect(',');
      b = term_from(in, dims);
    }
    in.expect(')');
    try {
      return comp ? Cell::comp(j, a, b) : Cell::inv(j, a);
    } catch (const IndexOutOfRange& e) {
      throw DimensionMismatch(e.what() + std::string(" at ") + start.where());
    } catch (const DimensionMismatch& e) {
      throw DimensionMismatch(e.what() + std::string(" at ") + start.where());
    }
  }
  throw start.error("expected gen, apply, comp or inv");
}

// --- line-oriented files -------------------------------------------------------

struct Line {
  std::string text;  // comment stripped
  int number = 0;
  Cursor cursor() const { return Cursor(text, number, 1); }
  bool blank() const { return text.find_first_not_of(" \t\r") == std::string::npos; }
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int n = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    Line l{line, n};
    if (!l.blank()) out.push_back(std::move(l));
    start = end + 1;
  }
  return out;
}

FaceKey face_key(Cursor& in) {
  in.skip_ws();
  const Cursor start = in;
  const std::vector<PositionedOp> ops = parse_ops(in);
  if (ops.size() != 1 || !ops[0].op.is_face()) throw start.error("expected a face such as d1-");
  return {ops[0].op.index, ops[0].op.sign};
}

// Parses "gen" and "face" lines into p; returns false for other keywords.
bool presentation_line(const Line& line, Presentation& p) {
  Cursor in = line.cursor();
  if (in.eat_keyword("gen ")) {
    const Cursor at = in;
    const std::string name = in.name();
    in.expect(':');
    const int dim = in.number();
    in.expect_end();
    if (p.contains(name)) throw at.error("generator '" + name + "' declared twice");
    p.add_generator(name, dim);
    return true;
  }
  if (in.eat_keyword("face ")) {
    const Cursor at = in;
    const std::string name = in.name();
    const GeneratorDecl* g = p.find(name);
    if (!g) throw at.error("face of undeclared generator '" + name + "'");
    const Cursor key_at = in;
    const FaceKey key = face_key(in);
    if (key.first > g->dim) throw key_at.error("face index exceeds the dimension of '" + name + "'");
    if (g->boundary.count(key)) throw key_at.error("face declared twice");
    in.expect('=');
    const Cell t = term_from(in, dims_of(p));
    in.expect_end();
    if (t.dim() != g->dim - 1) {
      throw key_at.error("face of '" + name + "' has dimension " + std::to_string(t.dim()) +
                         ", expected " + std::to_string(g->dim - 1));
    }
    // Presentation keeps declarations by value; rebuild the entry.
    GeneratorDecl copy = *g;
    copy.boundary.emplace(key, t);
    Presentation rebuilt(p.name());
    for (const auto& h : p.generators()) rebuilt.add(h.name == name ? copy : h);
    p = std::move(rebuilt);
    return true;
  }
  return false;
}

std::string header_name(const Line& line, std::string_view keyword) {
  Cursor in = line.cursor();
  if (!in.eat_keyword(keyword)) throw in.error("expected '" + std::string(keyword) + " NAME'");
  const std::string name = in.name();
  in.expect_end();
  return name;
}

void print_body(const Presentation& p, std::ostringstream& out, const char* indent) {
  for (const auto& g : p.generators()) {
    out << indent << "gen " << g.name << " : " << g.dim << "\n";
    for (const auto& [key, face] : g.boundary) {
      out << indent << "face " << g.name << " d" << key.first << sign_char(key.second) << " = "
          << to_string(face) << "\n";
    }
  }
}

GlobTerm glob_term_from(Cursor& in, const GlobularPresentation& p) {
  in.skip_ws();
  const Cursor start = in;
  if (in.eat('(')) {
    const GlobTerm a = glob_term_from(in, p);
    in.expect('o');
    const int k = in.number();
    const GlobTerm b = glob_term_from(in, p);
    in.expect(')');
    try {
      return GlobTerm::compose(k, a, b);
    } catch (const Error& e) {
      throw DimensionMismatch(e.what() + std::string(" at ") + start.where());
    }
  }
  if (in.eat_keyword("id(")) {
    const GlobTerm x = glob_term_from(in, p);
    in.expect(')');
    return GlobTerm::id(x);
  }
  const std::string name = in.name();
  const GlobGenerator* g = p.find(name);
  if (!g) throw start.error("unknown generator '" + name + "'");
  return GlobTerm::gen(name, g->dim);
}

}  // namespace

DimLookup dims_of(const Presentation& p) {
  return [&p](const std::string& name) -> std::optional<int> {
    const GeneratorDecl* g = p.find(name);
    if (!g) return std::nullopt;
    return g->dim;
  };
}

OperatorWord parse_word(std::string_view text) {
  Cursor in(text);
  OperatorWord w = word_from(in);
  in.expect_end();
  return w;
}

Cell parse_term(std::string_view text, const DimLookup& dims) {
  Cursor in(text);
  Cell t = term_from(in, dims);
  in.expect_end();
  return t;
}

Cell parse_term(std::string_view text, const Presentation& p) {
  return parse_term(text, dims_of(p));
}

std::variant<Cell, OperatorWord> parse_term_or_word(std::string_view text, const DimLookup& dims) {
  Cursor probe(text);
  probe.skip_ws();
  if (probe.peek() == '@') return parse_word(text);
  return parse_term(text, dims);
}

bool valid_generator_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!name_char(c)) return false;
  }
  return true;
}

Presentation parse_presentation(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty presentation", 1, 1);
  Presentation p(header_name(lines[0], "presentation "));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (!presentation_line(lines[k], p)) throw lines[k].cursor().error("expected 'gen' or 'face'");
  }
  return p;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "presentation " << (p.name().empty() ? "unnamed" : p.name()) << "\n";
  print_body(p, out, "");
  return out.str();
}

GlobularPresentation parse_globular_presentation(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty globular presentation", 1, 1);
  GlobularPresentation p(header_name(lines[0], "globular "));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    Cursor in = lines[k].cursor();
    if (!in.eat_keyword("cell ")) throw in.error("expected 'cell'");
    const Cursor at = in;
    GlobGenerator g;
    g.name = in.name();
    in.expect(':');
    g.dim = in.number();
    if (g.dim > 0) {
      in.expect(':');
      g.source = glob_term_from(in, p);
      in.expect_keyword("->");
      g.target = glob_term_from(in, p);
    }
    in.expect_end();
    if (p.find(g.name)) throw at.error("generator '" + g.name + "' declared twice");
    p.add(std::move(g));
  }
  return p;
}

std::string print_globular_presentation(const GlobularPresentation& p) {
  std::ostringstream out;
  out << "globular " << (p.name().empty() ? "unnamed" : p.name()) << "\n";
  for (const auto& g : p.generators()) {
    out << "cell " << g.name << " : " << g.dim;
    if (g.dim > 0) out << " : " << to_string(g.source) << " -> " << to_string(g.target);
    out << "\n";
  }
  return out.str();
}

CoverDiagram parse_cover(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty cover", 1, 1);
  header_name(lines[0], "cover ");
  CoverDiagram cover;
  Presentation* open = nullptr;  // the piece or overlap being declared

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    Cursor in = line.cursor();
    if (open) {
      if (in.eat_keyword("end")) {
        in.expect_end();
        open = nullptr;
      } else if (!presentation_line(line, *open)) {
        throw in.error("expected 'gen', 'face' or 'end'");
      }
      continue;
    }
    if (in.eat_keyword("piece ")) {
      const std::string name = in.name();
      in.expect_end();
      cover.pieces.emplace_back(name);
      open = &cover.pieces.back();
    } else if (in.eat_keyword("overlap ")) {
      const Cursor at = in;
      const int l = in.number();
      const int m = in.number();
      in.skip_ws();
      const std::string name = in.done() ? "" : in.name();
      in.expect_end();
      const auto n = static_cast<int>(cover.pieces.size());
      if (l >= n || m >= n) throw at.error("overlap of undeclared pieces");
      if (cover.overlaps.count({l, m})) throw at.error("overlap declared twice");
      const std::string label = name.empty() ? "U" + std::to_string(l) + std::to_string(m) : name;
      open = &cover.overlaps.emplace(std::pair{l, m}, Presentation(label)).first->second;
    } else if (in.eat_keyword("map ")) {
      in.skip_ws();
      const Cursor at = in;
      const char which = in.done() ? '\0' : in.next();
      if (which != 'a' && which != 'b') throw at.error("expected map a or map b");
      const int l = in.number();
      const int m = in.number();
      const auto it = cover.overlaps.find({l, m});
      if (it == cover.overlaps.end()) throw at.error("map on an undeclared overlap");
      const Cursor gen_at = in;
      const std::string g = in.name();
      if (!it->second.contains(g)) throw gen_at.error("'" + g + "' is not a generator of the overlap");
      in.expect('=');
      const Presentation& target = cover.pieces[which == 'a' ? l : m];
      const Cell image = term_from(in, dims_of(target));
      in.expect_end();
      auto& maps = which == 'a' ? cover.a : cover.b;
      PresMorphism& f = maps[{l, m}];
      f.source = it->second;
      f.target = target;
      if (!f.images.emplace(g, image).second) throw gen_at.error("image of '" + g + "' given twice");
    } else if (in.eat_keyword("hypothesis ")) {
      cover.unchecked_hypotheses.push_back(in.rest());
    } else {
      throw in.error("expected 'piece', 'overlap', 'map' or 'hypothesis'");
    }
  }
  if (open) throw ParseError("missing 'end'", lines.back().number + 1, 1);

  // Overlaps whose maps are absent get empty morphisms, reported by
  // build_rho_diagram; sources are refreshed for faces declared after maps.
  for (const auto& [key, u] : cover.overlaps) {
    for (auto* maps : {&cover.a, &cover.b}) {
      PresMorphism& f = (*maps)[key];
      f.source = u;
      f.target = cover.pieces[maps == &cover.a ? key.first : key.second];
    }
  }
  return cover;
}

std::string print_cover(const CoverDiagram& c, const std::string& name) {
  std::ostringstream out;
  out << "cover " << name << "\n";
  for (const auto& h : c.unchecked_hypotheses) out << "hypothesis " << h << "\n";
  for (const auto& piece : c.pieces) {
    out << "piece " << piece.name() << "\n";
    print_body(piece, out, "  ");
    out << "end\n";
  }
  for (const auto& [key, u] : c.overlaps) {
    out << "overlap " << key.first << " " << key.second << " " << u.name() << "\n";
    print_body(u, out, "  ");
    out << "end\n";
  }
  for (const auto& [label, maps] : {std::pair{'a', &c.a}, std::pair{'b', &c.b}}) {
    for (const auto& [key, f] : *maps) {
      const auto u = c.overlaps.find(key);
      if (u == c.overlaps.end()) continue;
      // Generator order of the overlap keeps the output stable.
      for (const auto& g : u->second.generators()) {
        auto it = f.images.find(g.name);
        if (it == f.images.end()) continue;
        out << "map " << label << " " << key.first << " " << key.second << " " << g.name
            << " = " << to_string(it->second) << "\n";
      }
    }
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cubical
