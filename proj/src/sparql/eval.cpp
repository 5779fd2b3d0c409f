#include "protokg/sparql/eval.hpp"

#include "protokg/errors.hpp"
#include "protokg/sparql/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace protokg::sparql {

namespace {

using Bindings = std::map<std::string, kg::Term>;

bool compatible(const Bindings& a, const Bindings& b) {
    for (const auto& [var, term] : b) {
        auto it = a.find(var);
        if (it != a.end() && !kg::term_equal(it->second, term)) return false;
    }
    return true;
}

Bindings merge(const Bindings& a, const Bindings& b) {
    Bindings out = a;
    for (const auto& [var, term] : b) out.emplace(var, term);
    return out;
}

bool shares_var(const Bindings& a, const Bindings& b) {
    for (const auto& [var, term] : b)
        if (a.count(var)) return true;
    return false;
}

class Evaluator {
public:
    explicit Evaluator(const kg::LocalStore& store) : store_(store) {}

    std::vector<Bindings> eval_group(const PatternNode& node) {
        std::vector<Bindings> acc = {Bindings{}};
        for (const auto& tp : node.triples) acc = join_pattern(acc, tp);
        for (const auto& child : node.children) acc = apply_child(acc, child);
        return acc;
    }

private:
    [[noreturn]] static void unsupported(const std::string& what) {
        throw QueryRejectedError("local evaluator does not support " + what);
    }

    std::vector<Bindings> apply_child(std::vector<Bindings> acc, const PatternNode& node) {
        switch (node.kind) {
            case PatternNode::Kind::Basic:
            case PatternNode::Kind::Group: {
                auto sols = eval_group(node);
                return join(acc, sols);
            }
            case PatternNode::Kind::Union: {
                std::vector<Bindings> merged;
                for (const auto& branch : node.children) {
                    auto sols = eval_group(branch);
                    merged.insert(merged.end(), sols.begin(), sols.end());
                }
                return join(acc, merged);
            }
            case PatternNode::Kind::Optional: {
                auto sols = eval_group(node.children.front());
                std::vector<Bindings> out;
                for (const auto& a : acc) {
                    bool extended = false;
                    for (const auto& b : sols) {
                        if (compatible(a, b)) {
                            out.push_back(merge(a, b));
                            extended = true;
                        }
                    }
                    if (!extended) out.push_back(a);
                }
                return out;
            }
            case PatternNode::Kind::Minus: {
                auto sols = eval_group(node.children.front());
                std::vector<Bindings> out;
                for (const auto& a : acc) {
                    bool removed = false;
                    for (const auto& b : sols) {
                        if (shares_var(a, b) && compatible(a, b)) {
                            removed = true;
                            break;
                        }
                    }
                    if (!removed) out.push_back(a);
                }
                return out;
            }
            case PatternNode::Kind::Values: {
                std::vector<Bindings> rows;
                for (const auto& row : node.value_rows) {
                    Bindings b;
                    for (std::size_t i = 0; i < node.vars.size(); ++i) {
                        if (!row[i]) continue; // UNDEF
                        const PatternTerm& v = *row[i];
                        if (const auto* r = std::get_if<kg::KgRef>(&v)) {
                            b[node.vars[i].name] = *r;
                        } else if (const auto* l = std::get_if<kg::Literal>(&v)) {
                            b[node.vars[i].name] = *l;
                        }
                    }
                    rows.push_back(std::move(b));
                }
                return join(acc, rows);
            }
            case PatternNode::Kind::Filter:
                if (!node.children.empty()) {
                    // (NOT) EXISTS
                    auto sols = eval_group(node.children.front());
                    std::vector<Bindings> out;
                    for (const auto& a : acc) {
                        bool exists = false;
                        for (const auto& b : sols) {
                            if (compatible(a, b)) {
                                exists = true;
                                break;
                            }
                        }
                        if (exists != node.negated) out.push_back(a);
                    }
                    return out;
                }
                unsupported("FILTER expressions");
            case PatternNode::Kind::Bind:
                unsupported("BIND");
            case PatternNode::Kind::Graph:
                // single-graph store: descend
                return join(acc, eval_group(node.children.front()));
            case PatternNode::Kind::Service:
                unsupported("SERVICE");
            case PatternNode::Kind::SubSelect: {
                AnswerSet inner = project(*node.sub, eval_group(node.sub->where));
                std::vector<Bindings> rows;
                for (const auto& r : inner.rows) rows.push_back(r.bindings);
                return join(acc, rows);
            }
        }
        return acc;
    }

    std::vector<Bindings> join(const std::vector<Bindings>& a, const std::vector<Bindings>& b) {
        std::vector<Bindings> out;
        for (const auto& x : a)
            for (const auto& y : b)
                if (compatible(x, y)) out.push_back(merge(x, y));
        return out;
    }

    std::vector<Bindings> join_pattern(const std::vector<Bindings>& acc,
                                       const TriplePattern& tp) {
        std::vector<Bindings> out;
        for (const auto& binding : acc) {
            kg::AskPattern probe;
            const Variable* sv = nullptr;
            const Variable* pv = nullptr;
            const Variable* ov = nullptr;

            if (const auto* v = std::get_if<Variable>(&tp.subject)) {
                auto it = binding.find(v->name);
                if (it != binding.end()) {
                    const auto* r = std::get_if<kg::KgRef>(&it->second);
                    if (!r) continue; // literal in subject position can never match
                    probe.subject = *r;
                } else {
                    sv = v;
                }
            } else if (const auto* r = std::get_if<kg::KgRef>(&tp.subject)) {
                probe.subject = *r;
            } else {
                continue; // literal subject matches nothing
            }

            if (const auto* v = std::get_if<Variable>(&tp.predicate)) {
                auto it = binding.find(v->name);
                if (it != binding.end()) {
                    const auto* r = std::get_if<kg::KgRef>(&it->second);
                    if (!r) continue;
                    probe.predicate = *r;
                } else {
                    pv = v;
                }
            } else if (const auto* r = std::get_if<kg::KgRef>(&tp.predicate)) {
                probe.predicate = *r;
            } else {
                unsupported("property paths");
            }

            if (const auto* v = std::get_if<Variable>(&tp.object)) {
                auto it = binding.find(v->name);
                if (it != binding.end()) {
                    probe.object = it->second;
                } else {
                    ov = v;
                }
            } else if (const auto* r = std::get_if<kg::KgRef>(&tp.object)) {
                probe.object = kg::Term{*r};
            } else if (const auto* l = std::get_if<kg::Literal>(&tp.object)) {
                probe.object = kg::Term{*l};
            }

            std::vector<const kg::Triple*> hits;
            if (probe.any_bound()) {
                hits = store_.match(probe);
            } else {
                for (const auto& t : store_.triples()) hits.push_back(&t);
            }
            for (const kg::Triple* t : hits) {
                Bindings next = binding;
                if (sv) next[sv->name] = t->subject;
                if (pv) next[pv->name] = t->predicate;
                if (ov) next[ov->name] = t->object;
                // a repeated variable within one pattern must agree
                if (sv && pv && sv->name == pv->name &&
                    !kg::term_equal(kg::Term{t->subject}, kg::Term{t->predicate}))
                    continue;
                if (sv && ov && sv->name == ov->name &&
                    !kg::term_equal(kg::Term{t->subject}, t->object))
                    continue;
                if (pv && ov && pv->name == ov->name &&
                    !kg::term_equal(kg::Term{t->predicate}, t->object))
                    continue;
                out.push_back(std::move(next));
            }
        }
        return out;
    }

public:
    AnswerSet project(const ParsedQuery& q, const std::vector<Bindings>& sols) {
        AnswerSet answers;
        if (q.has_group_by) unsupported("GROUP BY / HAVING");
        if (q.form == QueryForm::Ask) {
            AnswerRow row;
            kg::Literal b;
            b.lexical = sols.empty() ? "false" : "true";
            b.datatype = "http://www.w3.org/2001/XMLSchema#boolean";
            row.bindings["boolean"] = b;
            answers.rows.push_back(std::move(row));
            return answers;
        }

        if (!q.projection.aggregates.empty()) {
            if (q.projection.aggregates.size() != 1 || !q.projection.vars.empty() ||
                q.projection.star)
                unsupported("general aggregate projections");
            const auto& agg = q.projection.aggregates.front();
            if (!agg.count_star && !agg.count_var) unsupported("non-COUNT aggregates");
            std::set<std::string> seen;
            long long count = 0;
            for (const auto& b : sols) {
                if (agg.count_var) {
                    auto it = b.find(agg.count_var->name);
                    if (it == b.end()) continue;
                    if (agg.distinct) {
                        seen.insert(kg::comparison_key(it->second));
                    } else {
                        ++count;
                    }
                } else {
                    if (agg.distinct) {
                        Bindings all = b;
                        AnswerRow r;
                        r.bindings = all;
                        seen.insert(row_key(r));
                    } else {
                        ++count;
                    }
                }
            }
            if (agg.distinct) count = static_cast<long long>(seen.size());
            AnswerRow row;
            kg::Literal c;
            c.lexical = std::to_string(count);
            c.datatype = "http://www.w3.org/2001/XMLSchema#integer";
            row.bindings[agg.as.name] = c;
            answers.rows.push_back(std::move(row));
            return answers;
        }

        for (const auto& b : sols) {
            AnswerRow row;
            if (q.projection.star) {
                for (const auto& [var, term] : b)
                    if (var.rfind("__", 0) != 0) row.bindings[var] = term;
            } else {
                for (const auto& v : q.projection.vars) {
                    auto it = b.find(v.name);
                    if (it != b.end()) row.bindings[v.name] = it->second;
                }
            }
            if (!row.bindings.empty()) answers.rows.push_back(std::move(row));
        }
        canonicalize(answers);
        if (q.offset && *q.offset > 0) {
            auto n = static_cast<std::size_t>(*q.offset);
            answers.rows.erase(answers.rows.begin(),
                               answers.rows.begin() +
                                   static_cast<long>(std::min(n, answers.rows.size())));
        }
        if (q.limit && answers.rows.size() > static_cast<std::size_t>(*q.limit))
            answers.rows.resize(static_cast<std::size_t>(*q.limit));
        return answers;
    }

private:
    const kg::LocalStore& store_;
};

} // namespace

AnswerSet evaluate_local(const ParsedQuery& query, const kg::LocalStore& store) {
    Evaluator ev(store);
    auto sols = ev.eval_group(query.where);
    return ev.project(query, sols);
}

AnswerSet evaluate_local(const std::string& query_text, const kg::LocalStore& store) {
    ParsedQuery q;
    try {
        q = parse_query(query_text);
    } catch (const ParseError& e) {
        throw QueryRejectedError(std::string("query rejected: ") + e.what());
    }
    return evaluate_local(q, store);
}

} // namespace protokg::sparql
