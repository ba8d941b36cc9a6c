#include "auk/frontend.hpp"

#include <sstream>

namespace auk {

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << (severity == Severity::Error ? "error" : "warning");
  if (line > 0) os << " (line " << line << ")";
  os << ": " << message;
  if (!rule.empty()) os << " [" << rule << "]";
  return os.str();
}

namespace {

[[noreturn]] void fail_at(int line, std::string msg, std::string rule = {}) {
  throw ParseError(Diagnostic{Diagnostic::Severity::Error, line, std::move(msg),
                              std::move(rule)});
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
  const size_t h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

bool starts_decl(const std::string& line, std::string& kind) {
  static const char* kinds[] = {"context", "eqext", "hom", "map", "model"};
  for (const char* k : kinds) {
    const size_t n = std::string(k).size();
    if (line.rfind(k, 0) == 0 && (line.size() == n || line[n] == ' ')) {
      kind = k;
      return true;
    }
  }
  return false;
}

}  // namespace

SourceDocument parse_document(const std::string& text) {
  SourceDocument doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  SurfaceDecl* open = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip(strip_comment(raw));
    if (line.empty()) continue;
    std::string kind;
    if (starts_decl(line, kind)) {
      if (open) fail_at(lineno, "declaration begins before the previous 'end'");
      SurfaceDecl d;
      d.line = lineno;
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kind == "context") {
        d.kind = SurfaceDecl::Kind::Context;
        ls >> d.name;
      } else if (kind == "eqext") {
        d.kind = SurfaceDecl::Kind::EqExt;
        std::string overkw;
        ls >> d.name >> overkw >> d.arg1;
        if (overkw != "over") fail_at(lineno, "expected 'eqext NAME over CTX'");
      } else if (kind == "hom") {
        d.kind = SurfaceDecl::Kind::Hom;
        std::string colon, arrow;
        ls >> d.name >> colon >> d.arg1 >> arrow >> d.arg2;
        if (colon != ":" || arrow != "->")
          fail_at(lineno, "expected 'hom NAME : SRC -> TGT'");
      } else if (kind == "map") {
        d.kind = SurfaceDecl::Kind::Map;
        std::string rest;
        std::getline(ls, rest);
        rest = strip(rest);
        // NAME = (EQEXT, HOM)
        const size_t eq = rest.find('=');
        if (eq == std::string::npos) fail_at(lineno, "expected 'map NAME = (EQEXT, HOM)'");
        d.name = strip(rest.substr(0, eq));
        std::string pair = strip(rest.substr(eq + 1));
        if (pair.size() < 2 || pair.front() != '(' || pair.back() != ')')
          fail_at(lineno, "expected 'map NAME = (EQEXT, HOM)'");
        pair = pair.substr(1, pair.size() - 2);
        const size_t comma = pair.find(',');
        if (comma == std::string::npos)
          fail_at(lineno, "expected 'map NAME = (EQEXT, HOM)'");
        d.arg1 = strip(pair.substr(0, comma));
        d.arg2 = strip(pair.substr(comma + 1));
        doc.decls.push_back(std::move(d));
        continue;  // single-line declaration
      } else if (kind == "model") {
        d.kind = SurfaceDecl::Kind::Model;
        std::string ofkw;
        ls >> d.name >> ofkw >> d.arg1;
        if (ofkw != "of") fail_at(lineno, "expected 'model NAME of CTX'");
      }
      if (d.name.empty()) fail_at(lineno, "declaration is missing a name");
      doc.decls.push_back(std::move(d));
      open = &doc.decls.back();
      continue;
    }
    if (line == "end") {
      if (!open) fail_at(lineno, "'end' without an open declaration");
      open = nullptr;
      continue;
    }
    if (!open) fail_at(lineno, "line outside any declaration: '" + line + "'");
    open->body.emplace_back(lineno, line);
  }
  if (open) fail_at(lineno, "unterminated declaration '" + open->name + "'");
  return doc;
}

}  // namespace auk
