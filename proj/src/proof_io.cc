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

#include "cdsat/proof_io.h"

#include <map>
#include <set>

#include "cdsat/error.h"
#include "cdsat/sexpr.h"
#include "cdsat/smtlib.h"

namespace cdsat {

namespace {

[[noreturn]] void Bad(const SExpr& at, const std::string& msg) {
  throw ParseError(ErrorCode::kSyntaxError, at.line, at.col, msg);
}

std::string AssignmentText(const TermStore& store, const Assignment& a) {
  return "(" + std::to_string(a.term.value()) + " <- " +
         ValueToString(store, a.value) + ")";
}

std::string TermTable(const TermStore& store, const std::set<int>& ids,
                      std::string_view prefix, std::string_view suffix) {
  std::string out;
  for (int id : ids) {
    out += std::string(prefix) + std::to_string(id) + " " +
           TermToString(store, TermId(id)) + std::string(suffix) + "\n";
  }
  return out;
}

int ParseIndex(const SExpr& e) {
  if (e.is_list || e.atom.empty() || e.atom.size() > 9 ||
      e.atom.find_first_not_of("0123456789") != std::string::npos) {
    Bad(e, "expected an index");
  }
  return std::stoi(e.atom);
}

// File-local term ids mapped onto the reader's store.
class TermTableReader {
 public:
  explicit TermTableReader(TermStore& store) : store_(store) {}

  void Define(const SExpr& id, const SExpr& term) {
    int k = ParseIndex(id);
    if (!terms_.emplace(k, ParseTerm(store_, term)).second) {
      Bad(id, "term " + id.atom + " defined twice");
    }
  }

  TermId Term(const SExpr& id) const {
    auto it = terms_.find(ParseIndex(id));
    if (it == terms_.end()) Bad(id, "undefined term " + id.atom);
    return it->second;
  }

  Assignment ParseAssignment(const SExpr& e) const {
    if (e.is_atom() || e.items.size() != 3 || !e.items[1].IsAtom("<-")) {
      Bad(e, "expected (<term> <- <value>)");
    }
    TermId t = Term(e.items[0]);
    return Assignment{t, ParseValue(store_, e.items[2], store_.sort(t))};
  }

  Literal ParseLiteral(const SExpr& e) const {
    if (e.is_list || e.atom.size() < 2 ||
        (e.atom[0] != '+' && e.atom[0] != '-')) {
      Bad(e, "expected a literal +<term> or -<term>");
    }
    SExpr id = e;
    id.atom = e.atom.substr(1);
    TermId t = Term(id);
    if (!store_.is_bool(t)) Bad(e, "literal over a non-Boolean term");
    return Literal{t, e.atom[0] == '+'};
  }

 private:
  TermStore& store_;
  std::map<int, TermId> terms_;
};

std::string LiteralText(const Literal& l) {
  return (l.positive ? "+" : "-") + std::to_string(l.term.value());
}

}  // namespace

std::string WriteCdsatProof(const TermStore& store, const RawProof& proof) {
  std::set<int> used;
  for (const ProofNode& n : proof.nodes) {
    used.insert(n.assignment.term.value());
    for (const Assignment& p : n.premises) used.insert(p.term.value());
  }
  std::string out = "(cdsat-pt 1)\n";
  out += TermTable(store, used, "(term ", ")");
  for (size_t k = 0; k < proof.nodes.size(); ++k) {
    const ProofNode& n = proof.nodes[k];
    out += "(node " + std::to_string(k) + " ";
    std::string a = AssignmentText(store, n.assignment);
    switch (n.kind) {
      case ProofKind::kInput:
        out += "(input " + std::to_string(n.input_index) + " " + a + ")";
        break;
      case ProofKind::kThy: {
        out += "(thy " + n.module + " " + n.rule + " (prem";
        for (const Assignment& p : n.premises) {
          out += " " + AssignmentText(store, p);
        }
        out += ") (concl " + a + "))";
        break;
      }
      case ProofKind::kClash:
        out += "(clash " + std::to_string(n.left) + " " + a + ")";
        break;
      case ProofKind::kRes:
        out += "(res " + a + " " + std::to_string(n.left) + " " +
               std::to_string(n.right) + ")";
        break;
      case ProofKind::kEntail:
        out += "(entail " + a + " " + std::to_string(n.left) + ")";
        break;
    }
    out += ")\n";
  }
  out += "(refutation (inputs";
  for (int i : proof.refuted_inputs) out += " " + std::to_string(i);
  out += ") " + std::to_string(proof.root) + ")\n";
  return out;
}

RawProof ReadCdsatProof(std::string_view text, TermStore& store) {
  std::vector<SExpr> exprs = ReadSExprs(text);
  if (exprs.empty() || !exprs[0].is_list || exprs[0].items.size() != 2 ||
      !exprs[0].items[0].IsAtom("cdsat-pt") || !exprs[0].items[1].IsAtom("1")) {
    throw ParseError(ErrorCode::kSyntaxError, 1, 1,
                     "missing (cdsat-pt 1) header");
  }
  TermTableReader table(store);
  RawProof proof;
  bool closed = false;
  for (size_t k = 1; k < exprs.size(); ++k) {
    const SExpr& e = exprs[k];
    if (closed) Bad(e, "content after the refutation line");
    if (e.is_atom() || e.items.empty()) Bad(e, "expected a proof line");
    const SExpr& tag = e.items[0];
    if (tag.IsAtom("term") && e.items.size() == 3) {
      table.Define(e.items[1], e.items[2]);
    } else if (tag.IsAtom("node") && e.items.size() == 3) {
      if (ParseIndex(e.items[1]) != static_cast<int>(proof.nodes.size())) {
        Bad(e.items[1], "node numbers must be consecutive from 0");
      }
      const SExpr& b = e.items[2];
      if (b.is_atom() || b.items.empty()) Bad(b, "expected a node body");
      ProofNode n;
      const std::string& kind = b.items[0].atom;
      auto want = [&](size_t size) {
        if (b.items.size() != size) Bad(b, "malformed " + kind + " node");
      };
      if (kind == "input") {
        want(3);
        n.kind = ProofKind::kInput;
        n.input_index = ParseIndex(b.items[1]);
        n.assignment = table.ParseAssignment(b.items[2]);
      } else if (kind == "thy") {
        want(5);
        n.kind = ProofKind::kThy;
        if (b.items[1].is_list || b.items[2].is_list) Bad(b, "malformed thy node");
        n.module = b.items[1].atom;
        n.rule = b.items[2].atom;
        const SExpr& prem = b.items[3];
        const SExpr& concl = b.items[4];
        if (prem.is_atom() || prem.items.empty() ||
            !prem.items[0].IsAtom("prem")) {
          Bad(prem, "expected (prem ...)");
        }
        for (size_t i = 1; i < prem.items.size(); ++i) {
          n.premises.push_back(table.ParseAssignment(prem.items[i]));
        }
        n.premises = MakeAssignmentSet(std::move(n.premises));
        if (concl.is_atom() || concl.items.size() != 2 ||
            !concl.items[0].IsAtom("concl")) {
          Bad(concl, "expected (concl <assignment>)");
        }
        n.assignment = table.ParseAssignment(concl.items[1]);
      } else if (kind == "clash") {
        want(3);
        n.kind = ProofKind::kClash;
        n.left = ParseIndex(b.items[1]);
        n.assignment = table.ParseAssignment(b.items[2]);
      } else if (kind == "res") {
        want(4);
        n.kind = ProofKind::kRes;
        n.assignment = table.ParseAssignment(b.items[1]);
        n.left = ParseIndex(b.items[2]);
        n.right = ParseIndex(b.items[3]);
      } else if (kind == "entail") {
        want(3);
        n.kind = ProofKind::kEntail;
        n.assignment = table.ParseAssignment(b.items[1]);
        n.left = ParseIndex(b.items[2]);
      } else {
        Bad(b, "unknown node kind " + kind);
      }
      proof.nodes.push_back(std::move(n));
    } else if (tag.IsAtom("refutation") && e.items.size() == 3) {
      const SExpr& inputs = e.items[1];
      if (inputs.is_atom() || inputs.items.empty() ||
          !inputs.items[0].IsAtom("inputs")) {
        Bad(inputs, "expected (inputs ...)");
      }
      for (size_t i = 1; i < inputs.items.size(); ++i) {
        proof.refuted_inputs.push_back(ParseIndex(inputs.items[i]));
      }
      proof.root = ParseIndex(e.items[2]);
      closed = true;
    } else {
      Bad(e, "unexpected line");
    }
  }
  if (!closed) {
    throw ParseError(ErrorCode::kSyntaxError, 0, 0, "missing refutation line");
  }
  return proof;
}

std::string WriteResolutionProof(const TermStore& store,
                                 const ResolutionProof& proof) {
  std::set<int> used;
  for (const Assignment& h : proof.hypotheses) used.insert(h.term.value());
  for (const ResClause& c : proof.clauses) {
    for (const Literal& l : c.lits) used.insert(l.term.value());
    for (const Assignment& h : c.hyps) used.insert(h.term.value());
    if (c.origin == ClauseOrigin::kResolution) used.insert(c.pivot.term.value());
  }
  std::string out = TermTable(store, used, "t ", "");
  for (const Assignment& h : proof.hypotheses) {
    out += "h " + AssignmentText(store, h) + "\n";
  }
  for (const ResClause& c : proof.clauses) {
    std::string id = std::to_string(c.id);
    switch (c.origin) {
      case ClauseOrigin::kInput:
        out += "u " + id;
        break;
      case ClauseOrigin::kLemma:
        out += "l " + id + " " + c.module + " " + c.rule;
        for (const Assignment& h : c.hyps) {
          out += " hyp " + AssignmentText(store, h);
        }
        out += " :";
        break;
      case ClauseOrigin::kResolution:
        out += "r " + id + " " + std::to_string(c.left) + " " +
               std::to_string(c.right) + " " + LiteralText(c.pivot) + " :";
        break;
    }
    for (const Literal& l : c.lits) out += " " + LiteralText(l);
    out += "\n";
  }
  return out;
}

ResolutionProof ReadResolutionProof(std::string_view text, TermStore& store) {
  TermTableReader table(store);
  ResolutionProof proof;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::vector<SExpr> items;
    try {
      items = ReadSExprs(line);
    } catch (const ParseError& e) {
      throw ParseError(ErrorCode::kSyntaxError, line_no, e.column(), e.what());
    }
    if (items.empty()) continue;
    for (SExpr& item : items) item.line = line_no;
    const SExpr& tag = items[0];
    auto need = [&](bool ok, const std::string& msg) {
      if (!ok) Bad(tag, msg);
    };
    if (tag.IsAtom("t")) {
      need(items.size() == 3, "expected t <id> <term>");
      table.Define(items[1], items[2]);
      continue;
    }
    if (tag.IsAtom("h")) {
      need(items.size() == 2, "expected h <assignment>");
      proof.hypotheses.push_back(table.ParseAssignment(items[1]));
      continue;
    }
    need(tag.IsAtom("u") || tag.IsAtom("l") || tag.IsAtom("r"),
         "unknown line kind");
    need(items.size() >= 2, "missing clause id");
    ResClause c;
    c.id = ParseIndex(items[1]);
    size_t i = 2;
    if (tag.IsAtom("u")) {
      c.origin = ClauseOrigin::kInput;
      need(items.size() == 3, "expected u <id> <lit>");
      c.lits.push_back(table.ParseLiteral(items[2]));
      proof.clauses.push_back(std::move(c));
      continue;
    }
    if (tag.IsAtom("l")) {
      c.origin = ClauseOrigin::kLemma;
      need(items.size() >= 5 && items[2].is_atom() && items[3].is_atom(),
           "expected l <id> <module> <rule> ... :");
      c.module = items[2].atom;
      c.rule = items[3].atom;
      i = 4;
      while (i + 1 < items.size() && items[i].IsAtom("hyp")) {
        c.hyps.push_back(table.ParseAssignment(items[i + 1]));
        i += 2;
      }
    } else {
      c.origin = ClauseOrigin::kResolution;
      need(items.size() >= 6, "expected r <id> <left> <right> <pivot> :");
      c.left = ParseIndex(items[2]);
      c.right = ParseIndex(items[3]);
      c.pivot = table.ParseLiteral(items[4]);
      i = 5;
    }
    need(i < items.size() && items[i].IsAtom(":"), "missing ':'");
    for (++i; i < items.size(); ++i) {
      c.lits.push_back(table.ParseLiteral(items[i]));
    }
    proof.clauses.push_back(std::move(c));
  }
  return proof;
}

ProofFormat DetectProofFormat(std::string_view text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string_view::npos && text[i] == '(') return ProofFormat::kCdsat;
  return ProofFormat::kRes;
}

}  // namespace cdsat
