// Copyright 2026 The mrtk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrtk/penman.h"

#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "mrtk/errors.h"

namespace mrtk {

namespace {

const char kWrapperConcept[] = "multi-sentence";

bool IsDelimiter(char ch) {
  return std::isspace(static_cast<unsigned char>(ch)) || ch == '(' ||
         ch == ')' || ch == '"' || ch == '~' || ch == '/';
}

bool IsQuoted(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return false;
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\') {
      if (i + 2 >= s.size()) return false;
      ++i;
    } else if (s[i] == '"') {
      return false;
    }
  }
  return true;
}

// Symbols of this shape are read back as variable references.
bool LooksLikeVariable(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  for (size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string AlignmentSuffix(const std::vector<int> &token_ids) {
  if (token_ids.empty()) return "";
  std::string out = "~";
  for (size_t i = 0; i < token_ids.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(token_ids[i]);
  }
  return out;
}

void CheckWritable(const Graph &g) {
  for (const Concept &c : g.concepts) {
    if (!IsPenmanSymbol(c.name) && !IsQuoted(c.name)) {
      throw InvalidArgumentError("concept " + c.id + " name '" + c.name +
                                 "' is not a Penman symbol or quoted string");
    }
  }
  for (const Relation &r : g.relations) {
    if (!IsPenmanSymbol(r.label)) {
      throw InvalidArgumentError("relation " + r.id + " label '" + r.label +
                                 "' is not a Penman role");
    }
    const Concept *child = g.concepts.find(r.child_id);
    if (child->attribute && LooksLikeVariable(child->name)) {
      throw InvalidArgumentError("attribute " + child->id + " value '" +
                                 child->name +
                                 "' would read back as a variable; quote it");
    }
  }
}

class Writer {
 public:
  explicit Writer(const Graph &g) : g_(g) {}

  PenmanOutput Run() {
    CheckValid(g_);
    CheckWritable(g_);
    std::vector<std::string> roots = Roots(g_);

    std::ostringstream meta;
    meta << "# ::id" << (g_.tid.empty() ? "" : " " + g_.tid) << "\n";
    if (!g_.tokens.empty()) {
      meta << "# ::snt";
      for (const std::string &t : g_.tokens) meta << ' ' << t;
      meta << "\n";
    }
    if (!g_.annotator.empty()) meta << "# ::annotator " << g_.annotator << "\n";
    if (!g_.last_saved.empty()) {
      meta << "# ::save-date " << g_.last_saved << "\n";
    }
    if (roots.size() > 1) meta << "# ::roots " << roots.size() << "\n";
    for (const auto &[key, value] : g_.metadata) {
      meta << "# ::" << key << (value.empty() ? "" : " " + value) << "\n";
    }
    out_ << meta.str();

    if (roots.size() == 1) {
      EmitNode(roots[0], 0);
    } else if (roots.size() > 1) {
      std::string wrapper = Allocate(kWrapperConcept);
      out_ << "(" << wrapper << " / " << kWrapperConcept;
      const size_t indent = 2 + wrapper.size();
      for (size_t i = 0; i < roots.size(); ++i) {
        std::string role = ":snt" + std::to_string(i + 1);
        out_ << "\n" << std::string(indent, ' ') << role << ' ';
        EmitNode(roots[i], indent + role.size() + 1);
      }
      out_ << ")";
    }
    if (!roots.empty()) out_ << "\n";
    return {out_.str(), variables_};
  }

 private:
  std::string Allocate(const std::string &name) {
    char first = name.empty() ? 'x' : name[0];
    first = std::isalpha(static_cast<unsigned char>(first))
                ? static_cast<char>(std::tolower(first))
                : 'x';
    int &count = letter_counts_[first];
    ++count;
    std::string var(1, first);
    if (count > 1) var += std::to_string(count);
    return var;
  }

  const std::string &VariableOf(const Concept &c) {
    auto it = variables_.find(c.id);
    if (it == variables_.end()) {
      it = variables_.emplace(c.id, Allocate(c.name)).first;
    }
    return it->second;
  }

  // Writes "(var / name ...)" starting at column `column`.
  void EmitNode(const std::string &id, size_t column) {
    const Concept &c = *g_.concepts.find(id);
    const std::string var = VariableOf(c);
    out_ << "(" << var << " / " << c.name << AlignmentSuffix(c.token_ids);
    const size_t indent = column + 2 + var.size();
    for (const Child &child : OrderedChildren(g_, id)) {
      const Relation &r = *g_.relations.find(child.relation_id);
      const Concept &target = *g_.concepts.find(child.concept_id);
      out_ << "\n" << std::string(indent, ' ') << ':' << r.label << ' ';
      if (target.attribute) {
        out_ << target.name << AlignmentSuffix(target.token_ids);
      } else if (r.referent) {
        out_ << VariableOf(target);
      } else {
        EmitNode(target.id, indent + r.label.size() + 2);
      }
    }
    out_ << ")";
  }

  const Graph &g_;
  std::ostringstream out_;
  std::map<std::string, std::string> variables_;
  std::unordered_map<char, int> letter_counts_;
};

// ---------------------------------------------------------------------------
// Reader.

struct Token {
  enum Kind { kLParen, kRParen, kSlash, kRole, kSymbol, kString, kComment,
              kBlankLine, kEnd };
  Kind kind;
  std::string text;
  std::vector<int> alignment;
  bool aligned = false;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    bool line_has_content = false;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '\n') {
        if (!line_has_content) tokens.push_back(Make(Token::kBlankLine));
        line_has_content = false;
        Advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        Advance();
        continue;
      }
      if (ch == '#' && !line_has_content) {
        Token t = Make(Token::kComment);
        size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        t.text = std::string(text_.substr(pos_, end - pos_));
        while (pos_ < end) Advance();
        tokens.push_back(std::move(t));
        line_has_content = true;
        continue;
      }
      line_has_content = true;
      if (ch == '(') {
        tokens.push_back(Make(Token::kLParen));
        Advance();
      } else if (ch == ')') {
        tokens.push_back(Make(Token::kRParen));
        Advance();
      } else if (ch == '/') {
        tokens.push_back(Make(Token::kSlash));
        Advance();
      } else if (ch == '"') {
        Token t = Make(Token::kString);
        size_t start = pos_;
        Advance();
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) Advance();
          Advance();
        }
        if (pos_ >= text_.size()) {
          throw ParseError("unterminated string", t.line, t.column);
        }
        Advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        ReadAlignment(t);
        tokens.push_back(std::move(t));
      } else if (ch == ':') {
        Token t = Make(Token::kRole);
        Advance();
        size_t start = pos_;
        while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) Advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        // Alignments on roles are accepted and ignored.
        ReadAlignment(t);
        t.alignment.clear();
        t.aligned = false;
        tokens.push_back(std::move(t));
      } else if (ch == '~') {
        throw ParseError("alignment without a preceding value", line_,
                         column_);
      } else {
        Token t = Make(Token::kSymbol);
        size_t start = pos_;
        while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) Advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        ReadAlignment(t);
        tokens.push_back(std::move(t));
      }
    }
    tokens.push_back(Make(Token::kEnd));
    return tokens;
  }

 private:
  Token Make(Token::Kind kind) const {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.column = column_;
    return t;
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // Reads "~1,2" or "~e.1,2" following a value.
  void ReadAlignment(Token &t) {
    if (pos_ >= text_.size() || text_[pos_] != '~') return;
    int line = line_, column = column_;
    Advance();
    if (pos_ + 1 < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[pos_])) &&
        text_[pos_ + 1] == '.') {
      Advance();
      Advance();
    }
    t.aligned = true;
    while (true) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        Advance();
      }
      if (pos_ == start || pos_ - start > 9) {
        throw ParseError("malformed alignment", line, column);
      }
      t.alignment.push_back(
          std::stoi(std::string(text_.substr(start, pos_ - start))));
      if (pos_ < text_.size() && text_[pos_] == ',') {
        Advance();
        continue;
      }
      break;
    }
    if (pos_ < text_.size() && !IsDelimiter(text_[pos_]) &&
        text_[pos_] != ':') {
      throw ParseError("malformed alignment", line, column);
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct Atom {
  std::string text;
  bool is_string = false;
  std::vector<int> alignment;
  int line = 0, column = 0;
};

struct Node;

struct Edge {
  std::string label;
  int line = 0, column = 0;
  std::variant<size_t, Atom> value;  // index into nodes, or an atom
};

struct Node {
  std::string var;
  Atom concept_name;
  std::vector<Edge> edges;
  int line = 0, column = 0;
};

// Parses one block's token stream into a tree of nodes.
class TreeParser {
 public:
  TreeParser(const std::vector<Token> &tokens, size_t &pos)
      : tokens_(tokens), pos_(pos) {}

  std::vector<Node> nodes;

  size_t ParseNode() {
    const Token &open = Next();
    if (open.kind != Token::kLParen) Fail(open, "expected '('");
    const Token &var = Next();
    if (var.kind != Token::kSymbol || var.aligned) {
      Fail(var, "expected a variable");
    }
    size_t index = nodes.size();
    nodes.emplace_back();
    nodes[index].var = var.text;
    nodes[index].line = open.line;
    nodes[index].column = open.column;
    if (Peek().kind != Token::kSlash) {
      Fail(Peek(), "expected '/' and a concept after variable " + var.text);
    }
    Next();
    const Token &name_token = Next();
    if (name_token.kind != Token::kSymbol && name_token.kind != Token::kString) {
      Fail(name_token, "expected a concept name");
    }
    nodes[index].concept_name = ToAtom(name_token);
    while (true) {
      const Token &t = Peek();
      if (t.kind == Token::kRParen) {
        Next();
        return index;
      }
      if (t.kind != Token::kRole) {
        if (t.kind == Token::kEnd) Fail(t, "unbalanced parentheses");
        Fail(t, "expected a role or ')'");
      }
      Next();
      if (t.text.empty()) Fail(t, "empty relation label");
      Edge edge;
      edge.label = t.text;
      edge.line = t.line;
      edge.column = t.column;
      const Token &v = Peek();
      if (v.kind == Token::kLParen) {
        edge.value = ParseNode();
      } else if (v.kind == Token::kSymbol || v.kind == Token::kString) {
        Next();
        edge.value = ToAtom(v);
      } else if (v.kind == Token::kEnd) {
        Fail(v, "unbalanced parentheses");
      } else {
        Fail(v, "expected a value for role :" + t.text);
      }
      nodes[index].edges.push_back(std::move(edge));
    }
  }

  [[noreturn]] static void Fail(const Token &t, const std::string &message) {
    throw ParseError(message, t.line, t.column);
  }

 private:
  static Atom ToAtom(const Token &t) {
    Atom a;
    a.text = t.text;
    a.is_string = t.kind == Token::kString;
    a.alignment = t.alignment;
    a.line = t.line;
    a.column = t.column;
    return a;
  }

  // Comments and blank lines are insignificant inside a graph.
  void Skip() {
    while (tokens_[pos_].kind == Token::kComment ||
           tokens_[pos_].kind == Token::kBlankLine) {
      ++pos_;
    }
  }
  const Token &Peek() {
    Skip();
    return tokens_[pos_];
  }
  const Token &Next() {
    Skip();
    const Token &t = tokens_[pos_];
    if (t.kind != Token::kEnd) ++pos_;
    return t;
  }

  const std::vector<Token> &tokens_;
  size_t &pos_;
};

struct Entry {
  std::vector<std::pair<std::string, std::string>> metadata;
  int line = 1, column = 1;
  bool has_body = false;
  std::vector<Node> nodes;
  size_t root = 0;
};

// "# ::id a ::date b" -> {(id, a), (date, b)}.
void ParseMetadataLine(const std::string &line,
                       std::vector<std::pair<std::string, std::string>> &out) {
  size_t pos = 0;
  std::vector<size_t> starts;
  while ((pos = line.find("::", pos)) != std::string::npos) {
    if (pos == 0 || std::isspace(static_cast<unsigned char>(line[pos - 1]))) {
      starts.push_back(pos);
    }
    pos += 2;
  }
  for (size_t i = 0; i < starts.size(); ++i) {
    size_t begin = starts[i] + 2;
    size_t end = i + 1 < starts.size() ? starts[i + 1] : line.size();
    std::string segment = line.substr(begin, end - begin);
    size_t key_end = segment.find_first_of(" \t");
    std::string key = segment.substr(0, key_end);
    std::string value;
    if (key_end != std::string::npos) {
      value = segment.substr(key_end);
      size_t b = value.find_first_not_of(" \t");
      size_t e = value.find_last_not_of(" \t\r");
      value = b == std::string::npos ? "" : value.substr(b, e - b + 1);
    }
    if (!key.empty()) out.emplace_back(key, value);
  }
}

std::vector<std::string> SplitWhitespace(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

bool IsConstantSymbol(const Atom &a) {
  return a.is_string || !LooksLikeVariable(a.text);
}

class GraphBuilder {
 public:
  GraphBuilder(Entry &entry, std::vector<std::string> &warnings)
      : entry_(entry), warnings_(warnings) {}

  Graph Build(const std::string &default_tid,
              std::map<std::string, std::string> &variables) {
    Graph g;
    int declared_roots = 0;
    bool has_snt = false;
    for (const auto &[key, value] : entry_.metadata) {
      if (key == "id") {
        g.tid = value;
      } else if (key == "snt") {
        g.tokens = SplitWhitespace(value);
        has_snt = true;
      } else if (key == "annotator") {
        g.annotator = value;
      } else if (key == "save-date") {
        g.last_saved = value;
      } else if (key == "roots") {
        try {
          declared_roots = std::stoi(value);
        } catch (const std::exception &) {
          Warn("ignoring malformed ::roots value '" + value + "'");
        }
      } else {
        g.metadata.emplace_back(key, value);
      }
    }
    if (g.tid.empty()) g.tid = default_tid;
    has_snt_ = has_snt;
    if (!entry_.has_body) return g;

    for (const Node &n : entry_.nodes) {
      if (!defs_.emplace(n.var, &n).second) {
        throw ParseError("duplicate variable definition '" + n.var + "'",
                         n.line, n.column);
      }
    }

    std::vector<size_t> roots{entry_.root};
    const Node &top = entry_.nodes[entry_.root];
    if (declared_roots > 1) {
      if (IsWrapper(top, declared_roots)) {
        roots.clear();
        for (const Edge &e : top.edges) roots.push_back(std::get<size_t>(e.value));
        wrapper_var_ = top.var;
      } else {
        Warn(g.tid + ": ::roots given but the top node is not a " +
             std::string(kWrapperConcept) + " wrapper; kept as is");
      }
    }
    for (size_t r : roots) Walk(g, r);

    g.next_concept_id = next_concept_;
    g.next_relation_id = next_relation_;
    RecomputeCoverage(g);
    for (const auto &[var, id] : ids_) variables.emplace(id, var);
    return g;
  }

 private:
  bool IsWrapper(const Node &top, int declared) const {
    if (top.concept_name.text != kWrapperConcept ||
        !top.concept_name.alignment.empty() ||
        static_cast<int>(top.edges.size()) != declared) {
      return false;
    }
    for (size_t i = 0; i < top.edges.size(); ++i) {
      const Edge &e = top.edges[i];
      if (e.label != "snt" + std::to_string(i + 1) ||
          !std::holds_alternative<size_t>(e.value)) {
        return false;
      }
    }
    // The wrapper must not be referenced from inside.
    for (const Node &n : entry_.nodes) {
      for (const Edge &e : n.edges) {
        if (const Atom *a = std::get_if<Atom>(&e.value)) {
          if (!a->is_string && a->text == top.var) return false;
        }
      }
    }
    return true;
  }

  void Warn(std::string message) { warnings_.push_back(std::move(message)); }

  std::vector<int> Alignment(const Graph &g, const Atom &a) {
    std::vector<int> out;
    if (a.alignment.empty()) return out;
    if (!has_snt_) {
      if (!warned_no_snt_) {
        Warn((g.tid.empty() ? std::string("graph") : g.tid) +
             ": alignments dropped because there is no ::snt line");
        warned_no_snt_ = true;
      }
      return out;
    }
    for (int t : a.alignment) {
      if (t < static_cast<int>(g.tokens.size())) {
        out.push_back(t);
      } else {
        Warn(g.tid + ": alignment ~" + std::to_string(t) + " at " +
             std::to_string(a.line) + ":" + std::to_string(a.column) +
             " is outside the sentence; dropped");
      }
    }
    return out;
  }

  std::string NewConcept(Graph &g, const std::string &name,
                         std::vector<int> token_ids, bool attribute) {
    Concept c;
    c.id = "c" + std::to_string(next_concept_++);
    c.name = name;
    std::sort(token_ids.begin(), token_ids.end());
    token_ids.erase(std::unique(token_ids.begin(), token_ids.end()),
                    token_ids.end());
    c.token_ids = std::move(token_ids);
    c.attribute = attribute;
    g.concepts.insert(c);
    return c.id;
  }

  // Concept id for a variable, creating the concept on first mention.
  std::string IdFor(Graph &g, const std::string &var) {
    auto it = ids_.find(var);
    if (it != ids_.end()) return it->second;
    const Node &def = *defs_.at(var);
    std::string id = NewConcept(g, def.concept_name.text,
                                Alignment(g, def.concept_name), false);
    ids_.emplace(var, id);
    return id;
  }

  void AddEdge(Graph &g, const std::string &parent, const std::string &child,
               const std::string &label, bool referent, const Edge &e) {
    if (parent == child) {
      throw ParseError("relation :" + label + " points back to its own node",
                       e.line, e.column);
    }
    Relation r;
    r.id = "r" + std::to_string(next_relation_++);
    r.parent_id = parent;
    r.child_id = child;
    r.label = label;
    r.referent = referent;
    g.relations.insert(r);
  }

  void Walk(Graph &g, size_t index) {
    const Node &n = entry_.nodes[index];
    std::string id = IdFor(g, n.var);
    for (const Edge &e : n.edges) {
      if (const size_t *child = std::get_if<size_t>(&e.value)) {
        std::string child_id = IdFor(g, entry_.nodes[*child].var);
        AddEdge(g, id, child_id, e.label, false, e);
        Walk(g, *child);
        continue;
      }
      const Atom &a = std::get<Atom>(e.value);
      if (!a.is_string && defs_.count(a.text) > 0) {
        if (a.text == wrapper_var_) {
          throw ParseError("reference to the synthetic root", a.line,
                           a.column);
        }
        std::string child_id = IdFor(g, a.text);
        if (!a.alignment.empty()) {
          Concept &c = *g.concepts.find(child_id);
          std::vector<int> extra = Alignment(g, a);
          c.token_ids.insert(c.token_ids.end(), extra.begin(), extra.end());
          std::sort(c.token_ids.begin(), c.token_ids.end());
          c.token_ids.erase(std::unique(c.token_ids.begin(), c.token_ids.end()),
                            c.token_ids.end());
        }
        AddEdge(g, id, child_id, e.label, true, e);
      } else if (IsConstantSymbol(a)) {
        std::string child_id = NewConcept(g, a.text, Alignment(g, a), true);
        AddEdge(g, id, child_id, e.label, false, e);
      } else {
        throw ParseError("reference to undefined variable '" + a.text + "'",
                         a.line, a.column);
      }
    }
  }

  Entry &entry_;
  std::vector<std::string> &warnings_;
  std::unordered_map<std::string, const Node *> defs_;
  std::unordered_map<std::string, std::string> ids_;
  std::string wrapper_var_;
  int next_concept_ = 0;
  int next_relation_ = 0;
  bool has_snt_ = false;
  bool warned_no_snt_ = false;
};

}  // namespace

bool IsPenmanSymbol(std::string_view name) {
  if (name.empty() || name[0] == ':') return false;
  for (char ch : name) {
    if (IsDelimiter(ch)) return false;
  }
  return true;
}

PenmanOutput SerializePenmanWithVariables(const Graph &g) {
  return Writer(g).Run();
}

std::string SerializePenman(const Graph &g) { return Writer(g).Run().text; }

std::string SerializePenman(const Batch &batch) {
  std::string out;
  for (size_t i = 0; i < batch.graphs.size(); ++i) {
    if (i > 0) out += "\n";
    out += SerializePenman(batch.graphs[i]);
  }
  return out;
}

PenmanParse ParsePenmanDetailed(std::string_view text,
                                const std::string &source_name) {
  std::vector<Token> tokens = Lexer(text).Run();
  std::vector<Entry> entries;
  Entry current;
  bool has_metadata = false;
  size_t pos = 0;
  while (tokens[pos].kind != Token::kEnd) {
    const Token &t = tokens[pos];
    switch (t.kind) {
      case Token::kComment: {
        if (!has_metadata) {
          current.line = t.line;
          current.column = t.column;
        }
        size_t before = current.metadata.size();
        ParseMetadataLine(t.text, current.metadata);
        has_metadata = has_metadata || current.metadata.size() > before;
        ++pos;
        break;
      }
      case Token::kBlankLine:
        // Metadata followed by a blank line is a graph without concepts.
        if (has_metadata) {
          entries.push_back(std::move(current));
          current = Entry();
          has_metadata = false;
        }
        ++pos;
        break;
      case Token::kLParen: {
        if (!has_metadata) {
          current.line = t.line;
          current.column = t.column;
        }
        TreeParser parser(tokens, pos);
        current.root = parser.ParseNode();
        current.nodes = std::move(parser.nodes);
        current.has_body = true;
        entries.push_back(std::move(current));
        current = Entry();
        has_metadata = false;
        break;
      }
      case Token::kRParen:
        TreeParser::Fail(t, "unbalanced parentheses");
      default:
        TreeParser::Fail(t, "expected '(' to start a graph");
    }
  }
  if (has_metadata) entries.push_back(std::move(current));

  PenmanParse result;
  result.batch.source_name = source_name;
  std::set<std::string> tids;
  for (size_t i = 0; i < entries.size(); ++i) {
    std::string default_tid = source_name.empty()
                                  ? std::to_string(i + 1)
                                  : source_name + "." + std::to_string(i + 1);
    std::map<std::string, std::string> variables;
    Graph g = GraphBuilder(entries[i], result.warnings)
                  .Build(default_tid, variables);
    if (!tids.insert(g.tid).second) {
      throw ParseError("duplicate graph id '" + g.tid + "'", entries[i].line,
                       entries[i].column);
    }
    auto violations = Validate(g);
    if (!violations.empty()) {
      throw ParseError("graph " + g.tid + " is invalid: " +
                           violations.front().message,
                       entries[i].line, entries[i].column);
    }
    result.batch.graphs.push_back(std::move(g));
    result.variables.push_back(std::move(variables));
  }
  return result;
}

Batch ParsePenman(std::string_view text, const std::string &source_name,
                  std::vector<std::string> *warnings) {
  PenmanParse parse = ParsePenmanDetailed(text, source_name);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), parse.warnings.begin(),
                     parse.warnings.end());
  }
  return std::move(parse.batch);
}

}  // namespace mrtk
