#include "rulecraft/java/parser.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>

namespace rulecraft::java {
namespace {

enum class Tk { Ident, Number, String, Char, Op, End };

struct Tok {
  Tk kind = Tk::End;
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Failure {
  std::string message;
  std::size_t begin;
  std::size_t end;
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

// `>` is always a single token so that nested generic closers need no
// splitting; no construct in the subset depends on recognizing `>>` or `>=`.
constexpr std::array<std::string_view, 26> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=",
    "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", "{",  "}",  "(",  ")",  ";",  ","};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Tok> run() {
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      const auto c = static_cast<unsigned char>(src_[pos_]);
      const std::size_t begin = pos_;
      if (ident_start(c)) {
        while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        push(Tk::Ident, begin);
      } else if (std::isdigit(c) ||
                 (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number();
        push(Tk::Number, begin);
      } else if (src_.substr(pos_, 3) == "\"\"\"") {
        lex_text_block();
        push(Tk::String, begin);
      } else if (c == '"' || c == '\'') {
        lex_quoted(static_cast<char>(c));
        push(c == '"' ? Tk::String : Tk::Char, begin);
      } else {
        std::size_t length = 1;
        for (auto op : kOperators) {
          if (src_.substr(pos_, op.size()) == op) {
            length = op.size();
            break;
          }
        }
        pos_ += length;
        push(Tk::Op, begin);
      }
    }
    Tok end;
    end.begin = end.end = src_.size();
    tokens_.push_back(end);
    return std::move(tokens_);
  }

private:
  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (src_.substr(pos_, 2) == "/*") {
        const auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          throw Failure{"unterminated comment", pos_, src_.size()};
        }
        pos_ = close + 2;
      } else {
        break;
      }
    }
  }

  void lex_number() {
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(src_[pos_]);
      if (std::isalnum(c) || c == '_' || c == '.') {
        const bool exponent = (c == 'e' || c == 'E' || c == 'p' || c == 'P');
        ++pos_;
        if (exponent && pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      } else {
        break;
      }
    }
  }

  void lex_quoted(char quote) {
    const std::size_t begin = pos_++;
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\n') break;
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != quote) {
      throw Failure{quote == '"' ? "unterminated string literal" : "unterminated character literal",
                    begin, std::min(pos_, src_.size())};
    }
    ++pos_;
  }

  void lex_text_block() {
    const std::size_t begin = pos_;
    pos_ += 3;
    while (pos_ < src_.size() && src_.substr(pos_, 3) != "\"\"\"") {
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size()) throw Failure{"unterminated text block", begin, src_.size()};
    pos_ += 3;
  }

  void push(Tk kind, std::size_t begin) {
    tokens_.push_back(Tok{kind, src_.substr(begin, pos_ - begin), begin, pos_});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Tok> tokens_;
};

bool is_visibility(std::string_view w) {
  return w == "public" || w == "private" || w == "protected";
}

bool is_specifier(std::string_view w) {
  static constexpr std::array<std::string_view, 10> kSpecifiers = {
      "static", "final", "abstract", "synchronized", "native", "transient", "volatile",
      "strictfp", "default", "sealed"};
  return std::find(kSpecifiers.begin(), kSpecifiers.end(), w) != kSpecifiers.end();
}

struct Modifiers {
  std::size_t first = 0;
  std::string visibility;
  std::vector<std::string> specifiers;
  std::vector<std::pair<std::size_t, std::size_t>> annotations; // token ranges incl. '@'
  bool empty() const {
    return visibility.empty() && specifiers.empty() && annotations.empty();
  }
};

struct Declarator {
  std::string name;
  std::string dims;
  std::string initializer;
  std::size_t last_token = 0; // index of the declarator's last token
};

class Parser {
public:
  Parser(std::string_view source, std::string path) : path_(std::move(path)) {
    source_.assign(source);
  }

  JavaParse run() {
    JavaParse result;
    try {
      toks_ = Lexer(source_).run();
      CodeNode root;
      root.kind = NodeKind::CompilationUnit;
      root.span.begin = 0;
      root.span.end = source_.size();
      nodes_.push_back(std::move(root));
      compilation_unit();
    } catch (const Failure& f) {
      result.error = JavaIssue{f.message, span_at(f.begin, f.end)};
      result.warnings = std::move(warnings_);
      return result;
    }
    CodeTree tree;
    tree.path = std::move(path_);
    for (auto& node : nodes_) fill_positions(node.span);
    tree.nodes = std::move(nodes_);
    tree.source_hash = sha256_hex(source_);
    tree.source = std::move(source_);
    result.tree = std::move(tree);
    result.warnings = std::move(warnings_);
    return result;
  }

private:
  // ---- token helpers

  const Tok& cur() const { return toks_[pos_]; }
  const Tok& peek(std::size_t n = 1) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == Tk::End; }
  bool is(std::string_view text) const {
    return cur().kind != Tk::End && cur().kind != Tk::String && cur().text == text;
  }
  bool peek_is(std::size_t n, std::string_view text) const {
    const Tok& t = peek(n);
    return t.kind != Tk::End && t.kind != Tk::String && t.text == text;
  }
  bool is_ident() const { return cur().kind == Tk::Ident; }
  void advance() {
    if (!at_end()) ++pos_;
  }

  [[noreturn]] void fail(std::string message) const {
    throw Failure{std::move(message), cur().begin, cur().end};
  }

  void expect(std::string_view text) {
    if (!is(text)) {
      if (at_end()) fail("unexpected end of file, expected '" + std::string(text) + "'");
      fail("expected '" + std::string(text) + "' but found '" + std::string(cur().text) + "'");
    }
    advance();
  }

  std::string take_ident() {
    if (!is_ident()) {
      if (at_end()) fail("unexpected end of file, expected an identifier");
      fail("expected an identifier but found '" + std::string(cur().text) + "'");
    }
    std::string out(cur().text);
    advance();
    return out;
  }

  // Token texts joined with a single space wherever the source had
  // whitespace or a comment between them.
  std::string join(std::size_t first, std::size_t last) const {
    std::string out;
    for (std::size_t i = first; i < last; ++i) {
      if (i > first && toks_[i].begin > toks_[i - 1].end) out += ' ';
      out += toks_[i].text;
    }
    return out;
  }

  // Skips from an opening bracket to just past its partner.
  void skip_balanced() {
    const Tok open = cur();
    int depth = 0;
    while (true) {
      if (at_end()) {
        throw Failure{"unbalanced '" + std::string(open.text) + "': never closed", open.begin,
                      open.end};
      }
      if (is("(") || is("[") || is("{")) ++depth;
      if (is(")") || is("]") || is("}")) --depth;
      advance();
      if (depth == 0) return;
    }
  }

  // Skips `<...>` type parameters or arguments.
  bool skip_angles() {
    if (!is("<")) return false;
    int depth = 0;
    do {
      if (at_end()) fail("unterminated type argument list");
      if (is("<")) ++depth;
      else if (is(">")) --depth;
      else if (is("<<")) depth += 2;
      else if (!(is_ident() || is(",") || is(".") || is("?") || is("&") || is("[") ||
                 is("]") || is("@"))) {
        return false;
      }
      advance();
    } while (depth > 0);
    return true;
  }

  // ---- nodes

  NodeId add_node(NodeKind kind, NodeId parent, std::size_t first_tok) {
    CodeNode node;
    node.kind = kind;
    node.parent = parent;
    node.span.begin = toks_[first_tok].begin;
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  }

  CodeNode& node(NodeId id) { return nodes_[static_cast<std::size_t>(id)]; }

  void close_node(NodeId id, std::size_t last_tok) { node(id).span.end = toks_[last_tok].end; }

  void attach_annotations(NodeId owner, const Modifiers& mods) {
    for (const auto& [first, last] : mods.annotations) {
      const NodeId id = add_node(NodeKind::Annotation, owner, first);
      node(id).annotation_text = join(first + 1, last);
      close_node(id, last - 1);
    }
  }

  void apply_modifiers(NodeId id, const Modifiers& mods) {
    node(id).visibility = mods.visibility;
    node(id).specifiers = mods.specifiers;
    attach_annotations(id, mods);
  }

  // ---- declarations

  Modifiers parse_modifiers() {
    Modifiers mods;
    mods.first = pos_;
    while (true) {
      if (is("@") && !peek_is(1, "interface")) {
        const std::size_t first = pos_;
        advance();
        take_ident();
        while (is(".") && peek().kind == Tk::Ident) {
          advance();
          advance();
        }
        if (is("(")) skip_balanced();
        mods.annotations.emplace_back(first, pos_);
      } else if (is_ident() && is_visibility(cur().text)) {
        if (mods.visibility.empty()) mods.visibility = std::string(cur().text);
        advance();
      } else if (is_ident() && is_specifier(cur().text) && !peek_is(1, ":")) {
        mods.specifiers.emplace_back(cur().text);
        advance();
      } else if (is("non") && peek_is(1, "-") && peek_is(2, "sealed")) {
        mods.specifiers.emplace_back("non-sealed");
        pos_ += 3;
      } else {
        return mods;
      }
    }
  }

  bool at_skipped_type_decl() const {
    if (is("enum") && peek().kind == Tk::Ident) return true;
    if (is("record") && peek().kind == Tk::Ident && (peek_is(2, "(") || peek_is(2, "<"))) {
      return true;
    }
    return is("@") && peek_is(1, "interface");
  }

  void skip_type_decl(std::size_t first) {
    std::string what = is("@") ? "annotation type" : std::string(cur().text);
    while (!is("{")) {
      if (at_end()) fail("unexpected end of file in " + what + " declaration");
      if (is("(")) {
        skip_balanced();
        continue;
      }
      advance();
    }
    skip_balanced();
    warnings_.push_back(JavaIssue{what + " declaration skipped (not part of the supported subset)",
                                  span_at(toks_[first].begin, toks_[pos_ - 1].end)});
  }

  void compilation_unit() {
    while (!at_end()) {
      if (is(";")) {
        advance();
        continue;
      }
      if (is("}")) fail("unbalanced '}': no matching '{'");
      Modifiers mods = parse_modifiers();
      if (is("package")) {
        const NodeId id = add_node(NodeKind::PackageDecl, 0, mods.first);
        advance();
        const std::size_t first = pos_;
        while (!is(";")) {
          if (at_end()) fail("unexpected end of file in package declaration");
          advance();
        }
        node(id).name = join(first, pos_);
        attach_annotations(id, mods);
        close_node(id, pos_);
        advance();
      } else if (is("import")) {
        const NodeId id = add_node(NodeKind::ImportDecl, 0, mods.first);
        advance();
        if (is("static")) {
          node(id).specifiers.emplace_back("static");
          advance();
        }
        const std::size_t first = pos_;
        while (!is(";")) {
          if (at_end()) fail("unexpected end of file in import declaration");
          advance();
        }
        node(id).name = join(first, pos_);
        close_node(id, pos_);
        advance();
      } else if (is("class") || is("interface")) {
        parse_type_decl(mods, 0);
      } else if (at_skipped_type_decl()) {
        skip_type_decl(mods.first);
      } else if (at_end()) {
        fail("unexpected end of file after modifiers");
      } else {
        fail("unexpected '" + std::string(cur().text) + "' at top level");
      }
    }
  }

  // Skips a type starting at the current token. Returns false (and restores
  // the position) when the tokens do not form a type.
  bool parse_type() {
    const std::size_t saved = pos_;
    while (is("@") && peek().kind == Tk::Ident) {
      advance();
      advance();
      if (is("(")) skip_balanced();
    }
    if (!is_ident()) {
      pos_ = saved;
      return false;
    }
    while (true) {
      advance();
      if (is("<") && !skip_angles()) {
        pos_ = saved;
        return false;
      }
      if (is(".") && peek().kind == Tk::Ident) {
        advance();
        continue;
      }
      break;
    }
    while (is("[") && peek_is(1, "]")) pos_ += 2;
    if (is("...")) advance();
    return true;
  }

  std::string take_type() {
    const std::size_t first = pos_;
    if (!parse_type()) {
      if (at_end()) fail("unexpected end of file, expected a type");
      fail("expected a type but found '" + std::string(cur().text) + "'");
    }
    return join(first, pos_);
  }

  std::vector<std::string> take_type_list() {
    std::vector<std::string> out;
    out.push_back(take_type());
    while (is(",")) {
      advance();
      out.push_back(take_type());
    }
    return out;
  }

  void parse_type_decl(const Modifiers& mods, NodeId parent) {
    const bool interface = is("interface");
    const NodeId id =
        add_node(interface ? NodeKind::InterfaceDecl : NodeKind::ClassDecl, parent, mods.first);
    advance();
    node(id).name = take_ident();
    apply_modifiers(id, mods);
    skip_angles();
    while (!is("{")) {
      if (is("extends")) {
        advance();
        if (interface) {
          for (auto& t : take_type_list()) node(id).interface_texts.push_back(std::move(t));
        } else {
          node(id).superclass_text = take_type();
        }
      } else if (is("implements") && !interface) {
        advance();
        node(id).interface_texts = take_type_list();
      } else if (is("permits")) {
        advance();
        take_type_list();
      } else if (at_end()) {
        fail("unexpected end of file, expected '{'");
      } else {
        fail("unexpected '" + std::string(cur().text) + "' in type declaration");
      }
    }
    const Tok open = cur();
    advance();
    while (!is("}")) {
      if (at_end()) throw Failure{"unbalanced '{': never closed", open.begin, open.end};
      parse_member(id);
    }
    close_node(id, pos_);
    advance();
  }

  void parse_member(NodeId owner) {
    if (is(";")) {
      advance();
      return;
    }
    Modifiers mods = parse_modifiers();
    if (is("{")) { // initializer block
      skip_balanced();
      return;
    }
    if (is("class") || is("interface")) {
      parse_type_decl(mods, owner);
      return;
    }
    if (at_skipped_type_decl()) {
      skip_type_decl(mods.first);
      return;
    }
    skip_angles(); // generic method type parameters
    if (is_ident() && peek_is(1, "(")) {
      parse_callable(NodeKind::ConstructorDecl, owner, mods, {});
      return;
    }
    std::string type = take_type();
    if (is_ident() && peek_is(1, "(")) {
      parse_callable(NodeKind::MethodDecl, owner, mods, std::move(type));
      return;
    }
    parse_declarators(NodeKind::FieldDecl, owner, mods, type);
  }

  void parse_callable(NodeKind kind, NodeId owner, const Modifiers& mods, std::string type) {
    const NodeId id = add_node(kind, owner, mods.first);
    node(id).name = take_ident();
    node(id).type_text = std::move(type);
    apply_modifiers(id, mods);
    parse_parameters(id);
    while (is("[") && peek_is(1, "]")) {
      node(id).type_text += "[]";
      pos_ += 2;
    }
    if (is("throws")) {
      advance();
      take_type_list();
    }
    if (is(";")) {
      if (kind == NodeKind::ConstructorDecl) fail("constructor without a body");
      node(id).kind = NodeKind::AbstractMethodDecl;
      close_node(id, pos_);
      advance();
      return;
    }
    if (is("default")) fail("annotation element defaults are not supported");
    if (!is("{")) fail("expected a method body or ';'");
    const Tok open = cur();
    advance();
    parse_statements_until_brace(id, open);
    close_node(id, pos_);
    advance();
  }

  void parse_parameters(NodeId owner) {
    expect("(");
    while (!is(")")) {
      if (at_end()) fail("unexpected end of file in parameter list");
      Modifiers mods = parse_modifiers();
      std::string type = take_type();
      if (is("this")) { // receiver parameter
        advance();
      } else {
        const NodeId id = add_node(NodeKind::Parameter, owner, mods.first);
        node(id).type_text = std::move(type);
        node(id).name = take_ident();
        while (is("[") && peek_is(1, "]")) {
          node(id).type_text += "[]";
          pos_ += 2;
        }
        node(id).specifiers = mods.specifiers;
        attach_annotations(id, mods);
        close_node(id, pos_ - 1);
      }
      if (is(",")) {
        advance();
      } else if (!is(")")) {
        fail("expected ',' or ')' in parameter list");
      }
    }
    advance();
  }

  // Expression tokens up to (not including) one of `stops` at bracket depth
  // zero. Lambda bodies and anonymous class bodies stay inside the text.
  std::size_t scan_expression(std::initializer_list<std::string_view> stops) {
    const std::size_t first = pos_;
    int depth = 0;
    while (true) {
      if (at_end()) fail("unexpected end of file in expression");
      if (depth == 0) {
        for (auto stop : stops) {
          if (is(stop)) return first;
        }
      }
      if (is("(") || is("[") || is("{")) {
        ++depth;
      } else if (is(")") || is("]") || is("}")) {
        if (depth == 0) fail("unexpected '" + std::string(cur().text) + "' in expression");
        --depth;
      } else if (is("new")) {
        advance();
        parse_type(); // keeps commas in `new Map<K, V>()` out of the stop set
        continue;
      } else if (is("<") && pos_ > first && toks_[pos_ - 1].text == ".") {
        skip_angles(); // explicit generic call: obj.<T>call()
        continue;
      }
      advance();
    }
  }

  void parse_declarators(NodeKind kind, NodeId owner, const Modifiers& mods,
                         const std::string& type) {
    std::vector<Declarator> decls;
    while (true) {
      Declarator d;
      d.name = take_ident();
      while (is("[") && peek_is(1, "]")) {
        d.dims += "[]";
        pos_ += 2;
      }
      if (is("=")) {
        advance();
        const std::size_t first = scan_expression({",", ";"});
        if (pos_ == first) fail("missing initializer");
        d.initializer = join(first, pos_);
      }
      d.last_token = pos_ - 1;
      decls.push_back(std::move(d));
      if (is(",")) {
        advance();
        continue;
      }
      if (!is(";")) fail("expected ';' after declaration");
      decls.back().last_token = pos_;
      advance();
      break;
    }
    for (const auto& d : decls) {
      const NodeId id = add_node(kind, owner, mods.first);
      node(id).name = d.name;
      node(id).type_text = type + d.dims;
      node(id).initializer_text = d.initializer;
      apply_modifiers(id, mods);
      close_node(id, d.last_token);
    }
  }

  // ---- statements

  void parse_statements_until_brace(NodeId owner, const Tok& open) {
    while (!is("}")) {
      if (at_end()) throw Failure{"unbalanced '{': never closed", open.begin, open.end};
      parse_statement(owner);
    }
  }

  void skip_parens() {
    if (!is("(")) fail("expected '('");
    skip_balanced();
  }

  void parse_statement(NodeId owner) {
    if (is(";")) {
      advance();
      return;
    }
    const std::size_t first = pos_;
    if (is("{")) {
      const NodeId id = add_node(NodeKind::Block, owner, first);
      const Tok open = cur();
      advance();
      parse_statements_until_brace(id, open);
      close_node(id, pos_);
      advance();
      return;
    }
    if (is_ident()) {
      const std::string_view w = cur().text;
      if (w == "if" || w == "while" || w == "for" || w == "synchronized" || w == "do" ||
          w == "try" || w == "switch") {
        parse_control(owner);
        return;
      }
      if (w == "return") {
        const NodeId id = add_node(NodeKind::ReturnStmt, owner, first);
        advance();
        const std::size_t expr = scan_expression({";"});
        node(id).expr_text = join(expr, pos_);
        close_node(id, pos_);
        advance();
        return;
      }
      if (w == "throw" || w == "break" || w == "continue" || w == "assert" ||
          (w == "yield" && !peek_is(1, "="))) {
        advance();
        scan_expression({";"});
        advance();
        return;
      }
      if (peek_is(1, ":") && !is("default")) { // label
        pos_ += 2;
        parse_statement(owner);
        return;
      }
    }
    Modifiers mods = parse_modifiers();
    if (is("class") || is("interface") || at_skipped_type_decl()) {
      // Local types are opaque.
      while (!is("{")) {
        if (at_end()) fail("unexpected end of file in local type declaration");
        advance();
      }
      skip_balanced();
      return;
    }
    const std::size_t type_start = pos_;
    if (parse_type() && is_ident() &&
        (peek_is(1, "=") || peek_is(1, ";") || peek_is(1, ",") || peek_is(1, "["))) {
      parse_declarators(NodeKind::LocalDeclStmt, owner, mods, join(type_start, pos_));
      return;
    }
    if (!mods.empty()) fail("expected a local variable declaration");
    pos_ = type_start;
    const NodeId id = add_node(NodeKind::ExpressionStmt, owner, first);
    const std::size_t expr = scan_expression({";"});
    if (pos_ == expr) fail("empty expression statement");
    node(id).expr_text = join(expr, pos_);
    close_node(id, pos_);
    advance();
  }

  // Control statements become a block holding their nested statements;
  // conditions and loop headers are not modelled.
  void parse_control(NodeId owner) {
    const std::size_t first = pos_;
    const NodeId id = add_node(NodeKind::Block, owner, first);
    const std::string_view w = cur().text;
    advance();
    if (w == "if") {
      skip_parens();
      parse_statement(id);
      if (is("else")) {
        advance();
        parse_statement(id);
      }
    } else if (w == "while" || w == "for" || w == "synchronized") {
      skip_parens();
      parse_statement(id);
    } else if (w == "do") {
      parse_statement(id);
      expect("while");
      skip_parens();
      expect(";");
    } else if (w == "try") {
      if (is("(")) skip_parens();
      parse_statement(id);
      while (is("catch")) {
        advance();
        skip_parens();
        parse_statement(id);
      }
      if (is("finally")) {
        advance();
        parse_statement(id);
      }
    } else { // switch
      skip_parens();
      if (!is("{")) fail("expected '{' after switch");
      const Tok open = cur();
      advance();
      while (!is("}")) {
        if (at_end()) throw Failure{"unbalanced '{': never closed", open.begin, open.end};
        if (is("case") || is("default")) {
          advance();
          int depth = 0;
          while (depth > 0 || !(is(":") || is("->"))) {
            if (at_end()) fail("unexpected end of file in switch label");
            if (is("(")) ++depth;
            if (is(")")) --depth;
            advance();
          }
          const bool arrow = is("->");
          advance();
          if (arrow) parse_statement(id);
          continue;
        }
        parse_statement(id);
      }
      advance();
    }
    close_node(id, pos_ - 1);
  }

  // ---- positions

  SourceSpan span_at(std::size_t begin, std::size_t end) {
    SourceSpan span;
    span.begin = begin;
    span.end = end;
    fill_positions(span);
    return span;
  }

  void fill_positions(SourceSpan& span) {
    if (line_starts_.empty()) {
      line_starts_.push_back(0);
      for (std::size_t i = 0; i < source_.size(); ++i) {
        if (source_[i] == '\n') line_starts_.push_back(i + 1);
      }
    }
    auto locate = [&](std::size_t offset, int& line, int& col) {
      auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
      const auto index = static_cast<std::size_t>(it - line_starts_.begin()) - 1;
      line = static_cast<int>(index) + 1;
      col = static_cast<int>(offset - line_starts_[index]) + 1;
    };
    locate(span.begin, span.start_line, span.start_col);
    locate(span.end, span.end_line, span.end_col);
  }

  std::string source_;
  std::string path_;
  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::vector<CodeNode> nodes_;
  std::vector<JavaIssue> warnings_;
  std::vector<std::size_t> line_starts_;
};

// ---- printer

class Printer {
public:
  explicit Printer(const CodeTree& tree) : tree_(tree) {}

  std::string run() {
    for (NodeId child : tree_.root().children) top_level(tree_.node(child));
    return std::move(out_);
  }

private:
  void line(const std::string& text) {
    out_.append(static_cast<std::size_t>(depth_) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  std::string modifiers(const CodeNode& n) const {
    std::string out;
    if (!n.visibility.empty()) out += n.visibility + " ";
    for (const auto& s : n.specifiers) out += s + " ";
    return out;
  }

  std::string inline_annotations(const CodeNode& n) const {
    std::string out;
    for (NodeId c : n.children) {
      const CodeNode& child = tree_.node(c);
      if (child.kind == NodeKind::Annotation) out += "@" + child.annotation_text + " ";
    }
    return out;
  }

  void annotation_lines(const CodeNode& n) {
    for (NodeId c : n.children) {
      const CodeNode& child = tree_.node(c);
      if (child.kind == NodeKind::Annotation) line("@" + child.annotation_text);
    }
  }

  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
  }

  void top_level(const CodeNode& n) {
    switch (n.kind) {
    case NodeKind::PackageDecl:
      annotation_lines(n);
      line("package " + n.name + ";");
      break;
    case NodeKind::ImportDecl:
      line("import " + std::string(n.specifiers.empty() ? "" : "static ") + n.name + ";");
      break;
    default: member(n); break;
    }
  }

  std::string parameters(const CodeNode& n) const {
    std::vector<std::string> params;
    for (NodeId c : n.children) {
      const CodeNode& p = tree_.node(c);
      if (p.kind != NodeKind::Parameter) continue;
      params.push_back(inline_annotations(p) + modifiers(p) + p.type_text + " " + p.name);
    }
    return join(params);
  }

  void member(const CodeNode& n) {
    switch (n.kind) {
    case NodeKind::ClassDecl:
    case NodeKind::InterfaceDecl: {
      annotation_lines(n);
      const bool interface = n.kind == NodeKind::InterfaceDecl;
      std::string head = modifiers(n) + (interface ? "interface " : "class ") + n.name;
      if (!n.superclass_text.empty()) head += " extends " + n.superclass_text;
      if (!n.interface_texts.empty()) {
        head += (interface ? " extends " : " implements ") + join(n.interface_texts);
      }
      line(head + " {");
      ++depth_;
      for (NodeId c : n.children) {
        if (tree_.node(c).kind != NodeKind::Annotation) member(tree_.node(c));
      }
      --depth_;
      line("}");
      break;
    }
    case NodeKind::FieldDecl: declaration(n); break;
    case NodeKind::MethodDecl:
    case NodeKind::AbstractMethodDecl:
    case NodeKind::ConstructorDecl: {
      annotation_lines(n);
      std::string head = modifiers(n);
      if (n.kind != NodeKind::ConstructorDecl) head += n.type_text + " ";
      head += n.name + "(" + parameters(n) + ")";
      if (n.kind == NodeKind::AbstractMethodDecl) {
        line(head + ";");
        break;
      }
      line(head + " {");
      body(n);
      line("}");
      break;
    }
    default: break;
    }
  }

  void declaration(const CodeNode& n) {
    annotation_lines(n);
    std::string text = modifiers(n) + n.type_text + " " + n.name;
    if (!n.initializer_text.empty()) text += " = " + n.initializer_text;
    line(text + ";");
  }

  void body(const CodeNode& n) {
    ++depth_;
    for (NodeId c : n.children) statement(tree_.node(c));
    --depth_;
  }

  void statement(const CodeNode& n) {
    switch (n.kind) {
    case NodeKind::LocalDeclStmt: declaration(n); break;
    case NodeKind::ExpressionStmt: line(n.expr_text + ";"); break;
    case NodeKind::ReturnStmt:
      line(n.expr_text.empty() ? "return;" : "return " + n.expr_text + ";");
      break;
    case NodeKind::Block:
      line("{");
      body(n);
      line("}");
      break;
    default: break;
    }
  }

  const CodeTree& tree_;
  std::string out_;
  int depth_ = 0;
};

} // namespace

JavaParse parse_java(std::string_view source, std::string path) {
  return Parser(source, std::move(path)).run();
}

std::string print_java(const CodeTree& tree) { return Printer(tree).run(); }

} // namespace rulecraft::java
