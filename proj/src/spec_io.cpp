#include "gtscegar/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace gtscegar {

namespace {

// ---- lexer ----

enum class Tok { Name, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& s, std::vector<ParseError>& errors)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
            while (i < s.size() && s[i] != '\n')
                advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        // A leading minus before a digit is kept so that negative values get a
        // proper diagnostic where they are used.
        bool negative = c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
        if (name_char(c) || negative) {
            std::size_t j = negative ? i + 1 : i;
            // Hyphens may join name parts ("max-refinements") but never start "->".
            while (j < s.size() && (name_char(s[j]) || (s[j] == '-' && j + 1 < s.size() && name_char(s[j + 1]) &&
                                                        j > i)))
                ++j;
            t.kind = Tok::Name;
            t.text = s.substr(i, j - i);
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if ((c == '-' && i + 1 < s.size() && s[i + 1] == '>') || (c == '<' && i + 1 < s.size() && s[i + 1] == '-')) {
            t.kind = Tok::Punct;
            t.text = s.substr(i, 2);
            advance(2);
            out.push_back(std::move(t));
            continue;
        }
        if (std::string("{};:,[]|=.!&()").find(c) != std::string::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance(1);
            out.push_back(std::move(t));
            continue;
        }
        errors.push_back({line, col, "unexpected character", std::string(1, c)});
        advance(1);
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

// Reports the first unmatched or unterminated bracket.
bool balanced(const std::vector<Token>& toks, std::vector<ParseError>& errors)
{
    static const std::map<std::string, std::string> closing{{"{", "}"}, {"(", ")"}, {"[", "]"}};
    std::vector<std::string> open;
    for (const Token& t : toks) {
        if (t.kind == Tok::End) {
            if (!open.empty()) {
                errors.push_back({t.line, t.column, "unterminated block: expected '" + open.back() + "'",
                                  "<end of input>"});
                return false;
            }
            return true;
        }
        if (t.kind != Tok::Punct)
            continue;
        if (auto it = closing.find(t.text); it != closing.end()) {
            open.push_back(it->second);
        } else if (t.text == "}" || t.text == ")" || t.text == "]") {
            if (open.empty() || open.back() != t.text) {
                errors.push_back({t.line, t.column,
                                  open.empty() ? "unmatched '" + t.text + "'" : "expected '" + open.back() + "'",
                                  t.text});
                return false;
            }
            open.pop_back();
        }
    }
    return true;
}

// ---- parser ----

struct Failure {};

const std::set<std::string> kKeywords{"graph", "condition", "rule", "system", "forall", "exists",
                                      "true", "false", "pattern", "nodes", "edge", "over",
                                      "left", "right", "cond", "init", "bad", "rules", "config"};

const std::set<std::string> kConfigKeys{"entail-budget-ms", "unfold-depth", "model-nodes",   "model-edges",
                                        "max-refinements",  "spurious-mode", "split-conjuncts", "max-states"};

NamedGraph empty_named()
{
    return {"empty", share(Graph{}), {}, {}};
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<ParseError>& errors) : toks_(std::move(toks)), errors_(errors) {}

    SystemSpec spec;

    void parse_all()
    {
        while (peek().kind != Tok::End) {
            std::size_t before = errors_.size();
            std::size_t start = pos_;
            try {
                definition();
            } catch (const Failure&) {
                if (errors_.size() == before)
                    fail("malformed definition");
                recover(start);
            }
        }
        check_system();
    }

    NamedGraph graph_only()
    {
        NamedGraph g = graph_ref();
        expect_end();
        return g;
    }

    Cospan cospan_only()
    {
        auto [c, names] = cospan_lit();
        expect_end();
        return c;
    }

    CondPtr condition_only(const NamedGraph& root)
    {
        CondPtr c = expr(root);
        expect_end();
        return c;
    }

    void fail_here(const std::string& message)
    {
        fail(message);
        throw Failure{};
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<ParseError>& errors_;

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    Token take()
    {
        Token t = peek();
        if (pos_ < toks_.size() - 1)
            ++pos_;
        return t;
    }
    bool at(const std::string& text) const { return peek().kind != Tok::End && peek().text == text; }
    bool accept(const std::string& text)
    {
        if (!at(text))
            return false;
        take();
        return true;
    }

    void fail(const std::string& message)
    {
        const Token& t = peek();
        errors_.push_back({t.line, t.column, message, t.kind == Tok::End ? "<end of input>" : t.text});
    }
    void fail_at(const Token& t, const std::string& message)
    {
        errors_.push_back({t.line, t.column, message, t.kind == Tok::End ? "<end of input>" : t.text});
        throw Failure{};
    }

    void expect(const std::string& text)
    {
        if (!accept(text))
            fail_here("expected '" + text + "'");
    }
    void expect_end()
    {
        if (peek().kind != Tok::End)
            fail_here("expected end of input");
    }
    std::string name(const std::string& what)
    {
        if (peek().kind != Tok::Name)
            fail_here("expected " + what);
        return take().text;
    }
    std::string identifier(const std::string& what)
    {
        if (peek().kind != Tok::Name || kKeywords.count(peek().text))
            fail_here("expected " + what);
        return take().text;
    }

    // Skips the definition starting at token start: conditions end with a
    // semicolon at nesting depth zero, the other definitions with the brace
    // closing their body. Stray tokens are skipped one at a time.
    void recover(std::size_t start)
    {
        const std::string kw = toks_[start].text;
        pos_ = start + 1;
        if (kw != "graph" && kw != "condition" && kw != "rule" && kw != "system")
            return;
        int depth = 0;
        while (peek().kind != Tok::End) {
            Token t = take();
            if (t.text == "{") {
                ++depth;
            } else if (t.text == "}") {
                if (--depth <= 0 && kw != "condition")
                    return;
            } else if (t.text == ";" && depth == 0 && kw == "condition") {
                return;
            }
        }
    }

    bool defined(const std::string& n) const
    {
        return n == "empty" || spec.find_graph(n) || spec.find_condition(n) || spec.find_rule(n);
    }

    void definition()
    {
        if (at("graph"))
            graph_def();
        else if (at("condition"))
            condition_def();
        else if (at("rule"))
            rule_def();
        else if (at("system"))
            system_def();
        else
            fail_here("expected 'graph', 'condition', 'rule' or 'system'");
    }

    // ---- graphs ----

    NamedGraph graph_body(const std::string& gname)
    {
        expect("{");
        NamedGraph ng;
        ng.name = gname;
        Graph g;
        std::map<std::string, int> nodeIdx;
        std::set<std::string> edgeNamesSeen;
        while (!at("}")) {
            if (peek().kind == Tok::End)
                fail_here("expected '}'");
            if (accept("nodes")) {
                while (!at(";")) {
                    if (peek().kind != Tok::Name)
                        fail_here("expected node name or ';'");
                    Token t = take();
                    if (!nodeIdx.emplace(t.text, g.node_count()).second)
                        fail_at(t, "duplicate node '" + t.text + "'");
                    g.add_node();
                    ng.nodeNames.push_back(t.text);
                    accept(",");
                }
                expect(";");
            } else if (accept("edge")) {
                std::string en;
                if (peek().kind == Tok::Name && peek(1).text == ":") {
                    Token t = take();
                    en = t.text;
                    if (!edgeNamesSeen.insert(en).second)
                        fail_at(t, "duplicate edge '" + en + "'");
                }
                expect(":");
                auto endpoint = [&]() {
                    if (peek().kind != Tok::Name)
                        fail_here("expected node name");
                    Token t = take();
                    auto it = nodeIdx.find(t.text);
                    if (it == nodeIdx.end())
                        fail_at(t, "unknown node '" + t.text + "'");
                    return it->second;
                };
                int s = endpoint();
                expect("->");
                int t = endpoint();
                expect(";");
                g.add_edge(s, t);
                ng.edgeNames.push_back(en);
            } else {
                fail_here("expected 'nodes', 'edge' or '}'");
            }
        }
        expect("}");
        ng.graph = share(std::move(g));
        return ng;
    }

    void graph_def()
    {
        expect("graph");
        Token nt = peek();
        std::string gname = identifier("graph name");
        if (defined(gname))
            fail_at(nt, "name '" + gname + "' already defined");
        spec.graphs.push_back(graph_body(gname));
    }

    NamedGraph graph_ref()
    {
        if (at("{"))
            return graph_body("");
        Token t = peek();
        std::string gname = name("graph name or '{'");
        if (gname == "empty")
            return empty_named();
        const NamedGraph* g = spec.find_graph(gname);
        if (!g)
            fail_at(t, "unknown graph '" + gname + "'");
        return *g;
    }

    // ---- leg maps and cospans ----

    using Pairs = std::vector<std::pair<Token, Token>>;

    Pairs pairs()
    {
        Pairs out;
        while (peek().kind == Tok::Name) {
            Token a = take();
            expect("=");
            if (peek().kind != Tok::Name)
                fail_here("expected node or edge name");
            out.push_back({a, take()});
            if (!accept(","))
                break;
        }
        return out;
    }

    std::pair<Pairs, Pairs> leg_maps()
    {
        Pairs l, r;
        if (accept("[")) {
            l = pairs();
            if (accept("|"))
                r = pairs();
            expect("]");
        }
        return {l, r};
    }

    static int index_of(const std::vector<std::string>& names, const std::string& n)
    {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n)
                return static_cast<int>(i);
        return -1;
    }

    // Resolves a leg src -> tgt from explicit pairs plus name identity.
    Morphism leg(const NamedGraph& src, const NamedGraph& tgt, const GraphPtr& srcPtr, const Pairs& ps,
                 const Token& where)
    {
        const Graph& S = *src.graph;
        const Graph& T = *tgt.graph;
        std::vector<int> nm(S.node_count(), -1), em(S.edge_count(), -1);
        for (const auto& [a, b] : ps) {
            int v = index_of(src.nodeNames, a.text);
            if (v >= 0) {
                int w = index_of(tgt.nodeNames, b.text);
                if (w < 0)
                    fail_at(b, "unknown node '" + b.text + "' in leg target");
                nm[v] = w;
                continue;
            }
            int e = a.text.empty() ? -1 : index_of(src.edgeNames, a.text);
            if (e >= 0) {
                int x = index_of(tgt.edgeNames, b.text);
                if (x < 0)
                    fail_at(b, "unknown edge '" + b.text + "' in leg target");
                em[e] = x;
                continue;
            }
            fail_at(a, "unknown node or edge '" + a.text + "' in leg source");
        }
        for (int v = 0; v < S.node_count(); ++v) {
            if (nm[v] >= 0)
                continue;
            nm[v] = index_of(tgt.nodeNames, src.nodeNames[v]);
            if (nm[v] < 0)
                fail_at(where, "node '" + src.nodeNames[v] + "' has no image; add it to the leg map");
        }
        std::vector<bool> usedN(T.node_count(), false), usedE(T.edge_count(), false);
        for (int v = 0; v < S.node_count(); ++v) {
            if (usedN[nm[v]])
                fail_at(where, "leg map is not injective on nodes");
            usedN[nm[v]] = true;
        }
        for (int e = 0; e < S.edge_count(); ++e) {
            if (em[e] < 0 && !src.edgeNames[e].empty()) {
                int x = index_of(tgt.edgeNames, src.edgeNames[e]);
                if (x >= 0 && T.edges[x].src == nm[S.edges[e].src] && T.edges[x].tgt == nm[S.edges[e].tgt] &&
                    !usedE[x])
                    em[e] = x;
            }
            if (em[e] >= 0) {
                if (usedE[em[e]])
                    fail_at(where, "leg map is not injective on edges");
                if (T.edges[em[e]].src != nm[S.edges[e].src] || T.edges[em[e]].tgt != nm[S.edges[e].tgt])
                    fail_at(where, "edge map does not respect endpoints");
                usedE[em[e]] = true;
            }
        }
        for (int e = 0; e < S.edge_count(); ++e) {
            if (em[e] >= 0)
                continue;
            for (int x = 0; x < T.edge_count(); ++x) {
                if (!usedE[x] && T.edges[x].src == nm[S.edges[e].src] && T.edges[x].tgt == nm[S.edges[e].tgt]) {
                    em[e] = x;
                    usedE[x] = true;
                    break;
                }
            }
            if (em[e] < 0)
                fail_at(where, "edge of the leg source has no matching edge in the target");
        }
        return Morphism(srcPtr, tgt.graph, std::move(nm), std::move(em));
    }

    struct CospanNames {
        NamedGraph domain, middle, codomain;
    };

    // A -> X <- B [maps]; the domain pointer is replaced by root when given.
    std::pair<Cospan, CospanNames> cospan_lit(const NamedGraph* root = nullptr)
    {
        Token where = peek();
        NamedGraph a = graph_ref();
        expect("->");
        NamedGraph x = graph_ref();
        expect("<-");
        NamedGraph b = graph_ref();
        auto [lp, rp] = leg_maps();
        GraphPtr aPtr = a.graph;
        if (root) {
            if (!(*a.graph == *root->graph))
                fail_at(where, "cospan domain differs from the condition root");
            aPtr = root->graph;
        }
        Morphism l = leg(a, x, aPtr, lp, where);
        Morphism r = leg(b, x, b.graph, rp, where);
        return {Cospan{l, r}, CospanNames{a, x, b}};
    }

    // ---- conditions ----

    static CondPtr rebase(const CondPtr& c, const GraphPtr& root)
    {
        if (c->root_ptr() == root)
            return c;
        std::vector<int> nodes(root->node_count()), edges(root->edge_count());
        std::iota(nodes.begin(), nodes.end(), 0);
        std::iota(edges.begin(), edges.end(), 0);
        return transport(c, Morphism(c->root_ptr(), root, std::move(nodes), std::move(edges)));
    }

    CondPtr expr(const NamedGraph& root)
    {
        CondPtr acc = conj(root);
        while (accept("|"))
            acc = disjoin(acc, conj(root));
        return acc;
    }

    CondPtr conj(const NamedGraph& root)
    {
        CondPtr acc = unary(root);
        while (accept("&"))
            acc = conjoin(acc, unary(root));
        return acc;
    }

    CondPtr unary(const NamedGraph& root)
    {
        if (accept("!"))
            return negate(unary(root));
        if (at("forall") || at("exists")) {
            Quantifier q = take().text == "forall" ? Quantifier::Universal : Quantifier::Existential;
            Cospan arrow;
            NamedGraph childRoot;
            if (at("pattern")) {
                Token where = take();
                expect("(");
                NamedGraph p = graph_ref();
                expect(")");
                auto [lp, rp] = leg_maps();
                if (!rp.empty())
                    fail_at(where, "pattern sugar takes a single leg map");
                Morphism m = leg(root, p, root.graph, lp, where);
                arrow = lift(m);
                childRoot = p;
            } else {
                auto [c, names] = cospan_lit(&root);
                arrow = c;
                childRoot = names.codomain;
            }
            expect(".");
            CondPtr child = unary(childRoot);
            return quantify(q, arrow, rebase(child, arrow.codomain_ptr()));
        }
        return atom(root);
    }

    CondPtr atom(const NamedGraph& root)
    {
        if (accept("true"))
            return Condition::truth(root.graph);
        if (accept("false"))
            return Condition::falsity(root.graph);
        if (accept("(")) {
            CondPtr c = expr(root);
            expect(")");
            return c;
        }
        if (peek().kind == Tok::Name && !kKeywords.count(peek().text)) {
            Token t = take();
            const NamedCondition* nc = spec.find_condition(t.text);
            if (!nc)
                fail_at(t, "unknown condition '" + t.text + "'");
            if (!(nc->cond->root() == *root.graph))
                fail_at(t, "condition '" + t.text + "' has a different root");
            return rebase(nc->cond, root.graph);
        }
        fail_here("expected condition (true, false, name, '!', '(', forall or exists)");
        return nullptr;
    }

    void condition_def()
    {
        expect("condition");
        Token nt = peek();
        std::string cname = identifier("condition name");
        if (defined(cname))
            fail_at(nt, "name '" + cname + "' already defined");
        NamedGraph root = empty_named();
        if (accept("over"))
            root = graph_ref();
        expect("=");
        CondPtr c = expr(root);
        expect(";");
        spec.conditions.push_back({cname, c});
    }

    // ---- rules ----

    void rule_def()
    {
        expect("rule");
        Token nt = peek();
        std::string rname = identifier("rule name");
        if (defined(rname))
            fail_at(nt, "name '" + rname + "' already defined");
        expect("{");
        expect("left");
        expect("=");
        Token lt = peek();
        auto [left, ln] = cospan_lit();
        expect(";");
        expect("right");
        expect("=");
        Token rt = peek();
        auto [right, rn] = cospan_lit();
        expect(";");
        if (left.domain().node_count() != 0 || left.domain().edge_count() != 0)
            fail_at(lt, "left cospan must start at the empty graph");
        if (right.domain().node_count() != 0 || right.domain().edge_count() != 0)
            fail_at(rt, "right cospan must start at the empty graph");
        if (!(left.codomain() == right.codomain()))
            fail_at(rt, "left and right cospans must share the interface graph");
        right = Cospan{right.left, Morphism(left.codomain_ptr(), right.middle_ptr(), right.right.node_map(),
                                            right.right.edge_map())};
        CondPtr cond = Condition::truth(left.codomain_ptr());
        if (accept("cond")) {
            expect("=");
            NamedGraph iface = ln.codomain;
            iface.graph = left.codomain_ptr();
            cond = rebase(expr(iface), left.codomain_ptr());
            expect(";");
        }
        expect("}");
        Rule r{rname, left, right, cond};
        if (!r.valid())
            fail_at(nt, "rule '" + rname + "' is malformed (legs must be injective)");
        spec.rules.push_back(std::move(r));
    }

    // ---- system block ----

    void system_def()
    {
        Token st = take();
        if (spec.system)
            fail_at(st, "only one system block is allowed");
        expect("{");
        SystemBlock sb;
        bool haveInit = false, haveBad = false, haveRules = false;
        while (!accept("}")) {
            if (peek().kind == Tok::End)
                fail_here("expected '}'");
            if (accept("init")) {
                expect("=");
                sb.init = identifier("condition name");
                haveInit = true;
            } else if (accept("bad")) {
                expect("=");
                sb.bad = identifier("condition name");
                haveBad = true;
            } else if (accept("rules")) {
                expect("=");
                sb.rules.push_back(identifier("rule name"));
                while (accept(","))
                    sb.rules.push_back(identifier("rule name"));
                haveRules = true;
            } else if (accept("config")) {
                expect("{");
                while (!accept("}")) {
                    Token kt = peek();
                    std::string key = name("configuration key");
                    if (!kConfigKeys.count(key))
                        fail_at(kt, "unknown configuration key '" + key + "'");
                    expect("=");
                    sb.config[key] = name("configuration value");
                    expect(";");
                }
                continue;
            } else {
                fail_here("expected 'init', 'bad', 'rules', 'config' or '}'");
            }
            expect(";");
        }
        if (!haveInit || !haveBad || !haveRules)
            fail_at(st, "system block needs init, bad and rules");
        systemToken_ = st;
        spec.system = std::move(sb);
    }

    Token systemToken_;

    void check_system()
    {
        if (!spec.system)
            return;
        const SystemBlock& sb = *spec.system;
        auto check_cond = [&](const std::string& n) {
            const NamedCondition* c = spec.find_condition(n);
            if (!c)
                errors_.push_back({systemToken_.line, systemToken_.column, "unknown condition '" + n + "'", n});
            else if (c->cond->root().node_count() != 0 || c->cond->root().edge_count() != 0)
                errors_.push_back(
                    {systemToken_.line, systemToken_.column, "condition '" + n + "' is not over the empty graph", n});
        };
        check_cond(sb.init);
        check_cond(sb.bad);
        std::set<std::string> seen;
        for (const std::string& r : sb.rules) {
            if (!spec.find_rule(r))
                errors_.push_back({systemToken_.line, systemToken_.column, "unknown rule '" + r + "'", r});
            if (!seen.insert(r).second)
                errors_.push_back({systemToken_.line, systemToken_.column, "rule '" + r + "' listed twice", r});
        }
        for (const auto& [k, v] : sb.config) {
            bool ok = true;
            if (k == "spurious-mode")
                ok = v == "wp" || v == "sp";
            else if (k == "split-conjuncts")
                ok = v == "true" || v == "false";
            else
                ok = !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
            if (!ok)
                errors_.push_back(
                    {systemToken_.line, systemToken_.column, "invalid value '" + v + "' for '" + k + "'", v});
        }
    }
};

// ---- writer ----

std::string node_name(int v) { return std::to_string(v); }
std::string edge_name(int e) { return "e" + std::to_string(e); }

void write_graph_body(std::ostream& os, const Graph& g)
{
    os << "{";
    if (g.node_count() > 0) {
        os << " nodes";
        for (int v = 0; v < g.node_count(); ++v)
            os << (v ? ", " : " ") << node_name(v);
        os << ";";
    }
    for (int e = 0; e < g.edge_count(); ++e)
        os << " edge " << edge_name(e) << ": " << node_name(g.edges[e].src) << " -> " << node_name(g.edges[e].tgt)
           << ";";
    os << (g.empty() ? "}" : " }");
}

void write_graph_ref(std::ostream& os, const Graph& g)
{
    if (g.empty())
        os << "empty";
    else
        write_graph_body(os, g);
}

std::string leg_pairs(const Morphism& m)
{
    std::string out;
    auto add = [&](const std::string& a, const std::string& b) {
        if (a == b)
            return;
        if (!out.empty())
            out += ", ";
        out += a + "=" + b;
    };
    for (int v = 0; v < m.source().node_count(); ++v)
        add(node_name(v), node_name(m.node(v)));
    for (int e = 0; e < m.source().edge_count(); ++e)
        add(edge_name(e), edge_name(m.edge(e)));
    return out;
}

void write_cospan_to(std::ostream& os, const Cospan& c)
{
    write_graph_ref(os, c.domain());
    os << " -> ";
    write_graph_ref(os, c.middle());
    os << " <- ";
    write_graph_ref(os, c.codomain());
    std::string l = leg_pairs(c.left), r = leg_pairs(c.right);
    if (!l.empty() || !r.empty()) {
        os << " [" << l;
        if (!r.empty())
            os << " | " << r;
        os << "]";
    }
}

void write_cond_to(std::ostream& os, const CondPtr& a)
{
    if (a->is_true()) {
        os << "true";
        return;
    }
    if (a->is_false()) {
        os << "false";
        return;
    }
    const char* q = a->universal() ? "forall " : "exists ";
    const char* sep = a->universal() ? " & " : " | ";
    bool first = true;
    for (const Branch& b : a->branches()) {
        if (!first)
            os << sep;
        first = false;
        os << q;
        write_cospan_to(os, b.arrow);
        os << " . ";
        if (b.child->branches().empty()) {
            write_cond_to(os, b.child);
        } else {
            os << "(";
            write_cond_to(os, b.child);
            os << ")";
        }
    }
}

bool cospans_identical(const Cospan& a, const Cospan& b)
{
    return a.domain() == b.domain() && a.middle() == b.middle() && a.codomain() == b.codomain() &&
           a.left.node_map() == b.left.node_map() && a.left.edge_map() == b.left.edge_map() &&
           a.right.node_map() == b.right.node_map() && a.right.edge_map() == b.right.edge_map();
}

}  // namespace

const NamedGraph* SystemSpec::find_graph(const std::string& name) const
{
    for (const NamedGraph& g : graphs)
        if (g.name == name)
            return &g;
    return nullptr;
}

const NamedCondition* SystemSpec::find_condition(const std::string& name) const
{
    for (const NamedCondition& c : conditions)
        if (c.name == name)
            return &c;
    return nullptr;
}

const Rule* SystemSpec::find_rule(const std::string& name) const
{
    for (const Rule& r : rules)
        if (r.name == name)
            return &r;
    return nullptr;
}

ReactiveSystem SystemSpec::reactive_system() const
{
    if (!system)
        return ReactiveSystem{rules};
    ReactiveSystem out;
    for (const std::string& n : system->rules)
        if (const Rule* r = find_rule(n))
            out.rules.push_back(*r);
    return out;
}

std::string to_string(const ParseError& e)
{
    return std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.message + " (at '" + e.token + "')";
}

ParseResult parse_spec(const std::string& text)
{
    ParseResult res;
    std::vector<Token> toks = lex(text, res.errors);
    if (!res.errors.empty())
        return res;
    if (!balanced(toks, res.errors))
        return res;
    Parser p(std::move(toks), res.errors);
    try {
        p.parse_all();
    } catch (const std::exception& e) {
        res.errors.push_back({1, 1, std::string("internal error: ") + e.what(), ""});
    }
    if (res.errors.empty())
        res.spec = std::move(p.spec);
    return res;
}

namespace {

template <class F>
FragmentResult parse_fragment(const std::string& text, const SystemSpec& context, F body)
{
    FragmentResult res;
    std::vector<Token> toks = lex(text, res.errors);
    if (!res.errors.empty())
        return res;
    Parser p(std::move(toks), res.errors);
    p.spec = context;
    try {
        body(p, res);
    } catch (const Failure&) {
    } catch (const std::exception& e) {
        res.errors.push_back({1, 1, std::string("invalid fragment: ") + e.what(), ""});
    }
    if (!res.errors.empty()) {
        res.graph.reset();
        res.cospan.reset();
        res.cond = nullptr;
    }
    return res;
}

}  // namespace

FragmentResult parse_graph_fragment(const std::string& text, const SystemSpec& context)
{
    return parse_fragment(text, context, [](Parser& p, FragmentResult& r) { r.graph = p.graph_only(); });
}

FragmentResult parse_cospan_fragment(const std::string& text, const SystemSpec& context)
{
    return parse_fragment(text, context, [](Parser& p, FragmentResult& r) {
        Cospan c = p.cospan_only();
        if (!c.valid())
            p.fail_here("cospan legs must be injective");
        r.cospan = c;
    });
}

FragmentResult parse_condition_fragment(const std::string& text, const SystemSpec& context, const GraphPtr& root)
{
    return parse_fragment(text, context, [&](Parser& p, FragmentResult& r) {
        NamedGraph rg = empty_named();
        if (root) {
            rg.graph = root;
            rg.name.clear();
            for (int v = 0; v < root->node_count(); ++v)
                rg.nodeNames.push_back(node_name(v));
            for (int e = 0; e < root->edge_count(); ++e)
                rg.edgeNames.push_back(edge_name(e));
        }
        r.cond = p.condition_only(rg);
    });
}

std::string write_graph(const Graph& g)
{
    std::ostringstream os;
    write_graph_ref(os, g);
    return os.str();
}

std::string write_cospan(const Cospan& c)
{
    std::ostringstream os;
    write_cospan_to(os, c);
    return os.str();
}

std::string write_condition(const CondPtr& a)
{
    std::ostringstream os;
    write_cond_to(os, a);
    return os.str();
}

std::string write_spec(const SystemSpec& s)
{
    std::ostringstream os;
    for (const NamedGraph& g : s.graphs) {
        os << "graph " << g.name << " {\n";
        if (g.graph->node_count() > 0) {
            os << "  nodes";
            for (std::size_t v = 0; v < g.nodeNames.size(); ++v)
                os << (v ? ", " : " ") << g.nodeNames[v];
            os << ";\n";
        }
        for (int e = 0; e < g.graph->edge_count(); ++e) {
            os << "  edge";
            if (!g.edgeNames[e].empty())
                os << " " << g.edgeNames[e];
            os << ": " << g.nodeNames[g.graph->edges[e].src] << " -> " << g.nodeNames[g.graph->edges[e].tgt] << ";\n";
        }
        os << "}\n\n";
    }
    for (const NamedCondition& c : s.conditions) {
        os << "condition " << c.name;
        if (!c.cond->root().empty()) {
            os << " over ";
            write_graph_ref(os, c.cond->root());
        }
        os << " =\n  " << write_condition(c.cond) << ";\n\n";
    }
    for (const Rule& r : s.rules) {
        os << "rule " << r.name << " {\n";
        os << "  left = " << write_cospan(r.left) << ";\n";
        os << "  right = " << write_cospan(r.right) << ";\n";
        os << "  cond = " << write_condition(r.appCond) << ";\n";
        os << "}\n\n";
    }
    if (s.system) {
        const SystemBlock& sb = *s.system;
        os << "system {\n  init = " << sb.init << ";\n  bad = " << sb.bad << ";\n  rules = ";
        for (std::size_t i = 0; i < sb.rules.size(); ++i)
            os << (i ? ", " : "") << sb.rules[i];
        os << ";\n";
        if (!sb.config.empty()) {
            os << "  config {\n";
            for (const auto& [k, v] : sb.config)
                os << "    " << k << " = " << v << ";\n";
            os << "  }\n";
        }
        os << "}\n";
    }
    return os.str();
}

bool structurally_equal(const SystemSpec& a, const SystemSpec& b)
{
    if (a.graphs.size() != b.graphs.size() || a.conditions.size() != b.conditions.size() ||
        a.rules.size() != b.rules.size() || a.system.has_value() != b.system.has_value())
        return false;
    for (const NamedGraph& g : a.graphs) {
        const NamedGraph* h = b.find_graph(g.name);
        if (!h || !(*g.graph == *h->graph))
            return false;
    }
    for (const NamedCondition& c : a.conditions) {
        const NamedCondition* d = b.find_condition(c.name);
        if (!d || !structurally_equal(c.cond, d->cond))
            return false;
    }
    for (const Rule& r : a.rules) {
        const Rule* q = b.find_rule(r.name);
        if (!q || !cospans_identical(r.left, q->left) || !cospans_identical(r.right, q->right) ||
            !structurally_equal(r.appCond, q->appCond))
            return false;
    }
    if (a.system) {
        const SystemBlock &x = *a.system, &y = *b.system;
        if (x.init != y.init || x.bad != y.bad || x.rules != y.rules || x.config != y.config)
            return false;
    }
    return true;
}

void apply_config(const std::map<std::string, std::string>& entries, CegarConfig& config)
{
    for (const auto& [k, v] : entries) {
        if (k == "spurious-mode")
            config.mode = v == "sp" ? SpuriousMode::Sp : SpuriousMode::Wp;
        else if (k == "split-conjuncts")
            config.splitConjuncts = v == "true";
        else if (k == "entail-budget-ms")
            config.budget.wallMillis = std::stoll(v);
        else if (k == "unfold-depth")
            config.budget.unfoldDepth = std::stoi(v);
        else if (k == "model-nodes")
            config.budget.modelNodes = std::stoi(v);
        else if (k == "model-edges")
            config.budget.modelEdges = std::stoi(v);
        else if (k == "max-refinements")
            config.maxRefinements = std::stoi(v);
        else if (k == "max-states")
            config.limits.maxStates = std::stoul(v);
    }
}

}  // namespace gtscegar
