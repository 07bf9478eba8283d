// Copyright 2026 The CDSAT Kernel Authors
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

#include "cdsat/sexpr.h"

#include "cdsat/error.h"

namespace cdsat {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> ReadAll() {
    std::vector<SExpr> out;
    SkipSpace();
    while (pos_ < text_.size()) {
      out.push_back(Read());
      SkipSpace();
    }
    return out;
  }

 private:
  [[noreturn]] void Fail(int line, int col, const std::string& msg) {
    throw ParseError(ErrorCode::kSyntaxError, line, col, msg);
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        Advance();
      } else {
        break;
      }
    }
  }

  SExpr Read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = text_[pos_];
    if (c == ')') Fail(line_, col_, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      Advance();
      SkipSpace();
      while (true) {
        if (pos_ >= text_.size()) Fail(e.line, e.col, "unclosed '('");
        if (text_[pos_] == ')') break;
        e.items.push_back(Read());
        SkipSpace();
      }
      Advance();
      return e;
    }
    if (c == '"' || c == '|') {
      char close = c;
      e.atom.push_back(c);
      Advance();
      while (true) {
        if (pos_ >= text_.size()) Fail(e.line, e.col, "unterminated literal");
        char d = text_[pos_];
        e.atom.push_back(d);
        Advance();
        if (d == close) {
          // "" inside a string is an escaped quote.
          if (close == '"' && pos_ < text_.size() && text_[pos_] == '"') {
            e.atom.push_back('"');
            Advance();
            continue;
          }
          break;
        }
      }
      return e;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || d == ' ' || d == '\t' ||
          d == '\n' || d == '\r' || d == '"' || d == '|') {
        break;
      }
      e.atom.push_back(d);
      Advance();
    }
    return e;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<SExpr> ReadSExprs(std::string_view text) {
  return Reader(text).ReadAll();
}

std::string SExprToString(const SExpr& e) {
  if (e.is_atom()) return e.atom;
  std::string out = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i > 0) out += ' ';
    out += SExprToString(e.items[i]);
  }
  return out + ")";
}

}  // namespace cdsat
