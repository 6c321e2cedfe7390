#include "xray/parser.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "xray/errors.hpp"

namespace xray {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::FieldRead: return "FieldRead";
        case EventKind::FieldWrite: return "FieldWrite";
        case EventKind::SelfCall: return "SelfCall";
        case EventKind::CtorCall: return "CtorCall";
        case EventKind::ParamRead: return "ParamRead";
        case EventKind::LocalOp: return "LocalOp";
    }
    return "?";
}

std::string MethodDecl::signature() const {
    std::string sig = name;
    sig += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) sig += ',';
        sig += params[i].type;
    }
    sig += ')';
    return sig;
}

const FieldDecl* ClassModel::find_field(std::string_view field_name) const {
    for (const auto& f : fields)
        if (f.name == field_name) return &f;
    return nullptr;
}

const ClassModel* SourceUnit::find_class(std::string_view class_name) const {
    for (const auto& c : classes)
        if (c.name == class_name) return &c;
    return nullptr;
}

namespace {

// Recoverable statement-level syntax problem. The enclosing statement either
// degrades to a LocalOp or escalates to a ParseError when it references class
// members.
struct StmtSyntax {
    std::string message;
    Span span;
};

bool is_type_keyword(const Token& t) {
    if (t.kind != TokenKind::Keyword) return false;
    return t.text == "int" || t.text == "double" || t.text == "float" || t.text == "long" ||
           t.text == "short" || t.text == "byte" || t.text == "boolean" || t.text == "char";
}

bool is_modifier(const Token& t) {
    if (t.kind != TokenKind::Keyword) return false;
    return t.text == "public" || t.text == "private" || t.text == "protected" ||
           t.text == "static" || t.text == "final" || t.text == "abstract";
}

// Member-resolution tables over class headers, available before bodies are
// parsed. May span several units. Chain walks carry a visited guard so
// cyclic extends chains (reported later by resolve_hierarchy) cannot loop.
class Tables {
public:
    void add(const ClassModel& cls) {
        if (!index_.emplace(cls.name, &cls).second)
            throw DuplicateMember("duplicate class '" + cls.name + "'", cls.span);
    }

    std::string parent_of(const std::string& cls) const {
        auto it = index_.find(cls);
        if (it == index_.end()) return {};
        const auto& sup = it->second->superclass;
        return sup ? *sup : std::string{};
    }

    std::string field_owner(const std::string& cls, const std::string& name) const {
        std::set<std::string> seen;
        for (std::string cur = cls; !cur.empty() && seen.insert(cur).second;
             cur = parent_of(cur)) {
            auto it = index_.find(cur);
            if (it == index_.end()) break;
            if (it->second->find_field(name)) return cur;
        }
        return {};
    }

    // Resolves a self-call by name and arity, walking the extends chain from
    // `cls`. Returns the erased signature of the first match, or empty.
    std::string resolve_call(const std::string& cls, const std::string& name,
                             std::size_t arity) const {
        std::set<std::string> seen;
        for (std::string cur = cls; !cur.empty() && seen.insert(cur).second;
             cur = parent_of(cur)) {
            auto it = index_.find(cur);
            if (it == index_.end()) break;
            for (const auto& m : it->second->methods) {
                if (!m.is_constructor && m.name == name && m.arity() == arity)
                    return m.signature();
            }
        }
        return {};
    }

    bool has_member_named(const std::string& cls, const std::string& name) const {
        std::set<std::string> seen;
        for (std::string cur = cls; !cur.empty() && seen.insert(cur).second;
             cur = parent_of(cur)) {
            auto it = index_.find(cur);
            if (it == index_.end()) break;
            const ClassModel& c = *it->second;
            if (c.find_field(name)) return true;
            for (const auto& m : c.methods)
                if (!m.is_constructor && m.name == name) return true;
        }
        return false;
    }

private:
    std::map<std::string, const ClassModel*> index_;
};

// Lightweight expression tree, discarded once events are emitted.
struct Expr {
    enum class K { Name, This, FieldAccess, Call, New, Index, Literal, Unary, Binary, Assign, Ternary, SuperCall };

    K k = K::Literal;
    std::string name;  // identifier, member, callee, class name or operator
    std::unique_ptr<Expr> a;
    std::unique_ptr<Expr> b;
    std::unique_ptr<Expr> c;
    std::vector<std::unique_ptr<Expr>> args;
    Span span;
};

using ExprPtr = std::unique_ptr<Expr>;

ExprPtr make_expr(Expr::K k, Span span) {
    auto e = std::make_unique<Expr>();
    e->k = k;
    e->span = span;
    return e;
}

// Parses one method body into its Event list and TryBlocks.
class BodyParser {
public:
    BodyParser(const std::vector<Token>& toks, const Tables& tables, std::string cls,
               MethodDecl& method)
        : toks_(toks), tables_(tables), cls_(std::move(cls)), method_(method) {
        for (const auto& p : method.params)
            if (!p.name.empty()) params_.insert(p.name);
    }

    void parse_range(std::size_t begin) {
        pos_ = begin;  // at '{'
        parse_block();
        std::sort(method_.try_blocks.begin(), method_.try_blocks.end(),
                  [](const TryBlock& l, const TryBlock& r) { return l.span.begin < r.span.begin; });
    }

private:
    const std::vector<Token>& toks_;
    const Tables& tables_;
    std::string cls_;
    MethodDecl& method_;
    std::size_t pos_ = 0;
    std::set<std::string> params_;
    std::vector<std::vector<std::string>> scopes_;
    std::vector<char> claimed_;  // event indices owned by a try block
    int try_counter_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    void advance() { if (cur().kind != TokenKind::EndOfFile) ++pos_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw StmtSyntax{message, cur().span};
    }

    void expect_punct(std::string_view p) {
        if (!cur().is_punct(p)) fail("expected '" + std::string(p) + "'");
        advance();
    }

    // --- scopes ---------------------------------------------------------

    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() { scopes_.pop_back(); }
    void declare_local(const std::string& name) { scopes_.back().push_back(name); }

    bool is_local(const std::string& name) const {
        for (const auto& scope : scopes_)
            for (const auto& n : scope)
                if (n == name) return true;
        return false;
    }

    // --- events ---------------------------------------------------------

    void emit(EventKind kind, std::string target, Span span, int arity = -1) {
        method_.body.push_back(Event{kind, std::move(target), span, arity});
    }

    void emit_expr(const Expr& e) {
        switch (e.k) {
            case Expr::K::Literal:
            case Expr::K::This:
                return;
            case Expr::K::Name:
                if (params_.count(e.name)) emit(EventKind::ParamRead, e.name, e.span);
                else if (is_local(e.name)) emit(EventKind::LocalOp, e.name, e.span);
                else if (!tables_.field_owner(cls_, e.name).empty())
                    emit(EventKind::FieldRead, e.name, e.span);
                else emit(EventKind::LocalOp, e.name, e.span);
                return;
            case Expr::K::FieldAccess:
                if (e.a->k == Expr::K::This) {
                    if (!tables_.field_owner(cls_, e.name).empty())
                        emit(EventKind::FieldRead, e.name, e.span);
                    else emit(EventKind::LocalOp, e.name, e.span);
                } else {
                    emit_expr(*e.a);
                    emit(EventKind::LocalOp, e.name, e.span);
                }
                return;
            case Expr::K::Call: {
                if (!e.a || e.a->k == Expr::K::This) {
                    std::string sig = tables_.resolve_call(cls_, e.name, e.args.size());
                    if (!sig.empty()) emit(EventKind::SelfCall, sig, e.span);
                    else emit(EventKind::LocalOp, e.name, e.span);
                } else {
                    emit_expr(*e.a);
                    emit(EventKind::LocalOp, e.name, e.span);
                }
                for (const auto& arg : e.args) emit_expr(*arg);
                return;
            }
            case Expr::K::SuperCall: {
                const std::string parent = tables_.parent_of(cls_);
                if (e.name.empty()) {  // super(...) constructor call
                    if (!parent.empty())
                        emit(EventKind::CtorCall, parent, e.span, static_cast<int>(e.args.size()));
                    else emit(EventKind::LocalOp, "super", e.span);
                } else {
                    std::string sig =
                        parent.empty() ? std::string{}
                                       : tables_.resolve_call(parent, e.name, e.args.size());
                    if (!sig.empty()) emit(EventKind::SelfCall, sig, e.span);
                    else emit(EventKind::LocalOp, e.name, e.span);
                }
                for (const auto& arg : e.args) emit_expr(*arg);
                return;
            }
            case Expr::K::New:
                emit(EventKind::CtorCall, e.name, e.span, static_cast<int>(e.args.size()));
                for (const auto& arg : e.args) emit_expr(*arg);
                return;
            case Expr::K::Index:
                emit_expr(*e.a);
                emit_expr(*e.b);
                return;
            case Expr::K::Unary:
                if (e.name == "++" || e.name == "--") emit_store(*e.a);
                else emit_expr(*e.a);
                return;
            case Expr::K::Binary:
                emit_expr(*e.a);
                emit_expr(*e.b);
                return;
            case Expr::K::Assign:
                emit_store(*e.a);
                emit_expr(*e.b);
                return;
            case Expr::K::Ternary:
                emit_expr(*e.a);
                emit_expr(*e.b);
                emit_expr(*e.c);
                return;
        }
    }

    void emit_store(const Expr& e) {
        switch (e.k) {
            case Expr::K::Name:
                if (params_.count(e.name) || is_local(e.name))
                    emit(EventKind::LocalOp, e.name, e.span);
                else if (!tables_.field_owner(cls_, e.name).empty())
                    emit(EventKind::FieldWrite, e.name, e.span);
                else emit(EventKind::LocalOp, e.name, e.span);
                return;
            case Expr::K::FieldAccess:
                if (e.a->k == Expr::K::This) {
                    if (!tables_.field_owner(cls_, e.name).empty())
                        emit(EventKind::FieldWrite, e.name, e.span);
                    else emit(EventKind::LocalOp, e.name, e.span);
                } else {
                    emit_expr(*e.a);
                    emit(EventKind::LocalOp, e.name, e.span);
                }
                return;
            case Expr::K::Index:
                emit_expr(*e.a);
                emit_expr(*e.b);
                return;
            default:
                emit_expr(e);
                return;
        }
    }

    // --- expressions ----------------------------------------------------

    ExprPtr parse_expression() {
        ExprPtr lhs = parse_ternary();
        if (cur().kind == TokenKind::Punct &&
            (cur().text == "=" || cur().text == "+=" || cur().text == "-=" ||
             cur().text == "*=" || cur().text == "/=" || cur().text == "%=")) {
            if (lhs->k != Expr::K::Name && lhs->k != Expr::K::FieldAccess &&
                lhs->k != Expr::K::Index)
                fail("invalid assignment target");
            auto node = make_expr(Expr::K::Assign, cur().span);
            node->name = std::string(cur().text);
            advance();
            node->a = std::move(lhs);
            node->b = parse_expression();
            return node;
        }
        return lhs;
    }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(0);
        if (cur().is_punct("?")) {
            auto node = make_expr(Expr::K::Ternary, cur().span);
            advance();
            node->a = std::move(cond);
            node->b = parse_expression();
            expect_punct(":");
            node->c = parse_expression();
            return node;
        }
        return cond;
    }

    static int binary_prec(std::string_view op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "==" || op == "!=") return 3;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
        if (op == "+" || op == "-") return 5;
        if (op == "*" || op == "/" || op == "%" || op == "&" || op == "|" || op == "^") return 6;
        return 0;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        while (cur().kind == TokenKind::Punct) {
            int prec = binary_prec(cur().text);
            if (prec == 0 || prec < min_prec) break;
            auto node = make_expr(Expr::K::Binary, cur().span);
            node->name = std::string(cur().text);
            advance();
            node->a = std::move(lhs);
            node->b = parse_binary(prec + 1);
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (cur().kind == TokenKind::Punct &&
            (cur().text == "!" || cur().text == "-" || cur().text == "+" || cur().text == "~" ||
             cur().text == "++" || cur().text == "--")) {
            auto node = make_expr(Expr::K::Unary, cur().span);
            node->name = std::string(cur().text);
            advance();
            node->a = parse_unary();
            return node;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        for (;;) {
            if (cur().is_punct(".")) {
                if (peek().kind != TokenKind::Identifier) fail("expected member name");
                std::string member(peek().text);
                Span member_span = peek().span;
                advance();
                advance();
                if (cur().is_punct("(")) {
                    auto call = make_expr(Expr::K::Call, member_span);
                    call->name = std::move(member);
                    call->a = std::move(e);
                    call->args = parse_args();
                    e = std::move(call);
                } else {
                    auto access = make_expr(Expr::K::FieldAccess, member_span);
                    access->name = std::move(member);
                    access->a = std::move(e);
                    e = std::move(access);
                }
            } else if (cur().is_punct("[")) {
                auto idx = make_expr(Expr::K::Index, cur().span);
                advance();
                idx->a = std::move(e);
                idx->b = parse_expression();
                expect_punct("]");
                e = std::move(idx);
            } else if (cur().is_punct("++") || cur().is_punct("--")) {
                auto node = make_expr(Expr::K::Unary, cur().span);
                node->name = std::string(cur().text);
                advance();
                node->a = std::move(e);
                e = std::move(node);
            } else {
                break;
            }
        }
        return e;
    }

    std::vector<ExprPtr> parse_args() {
        std::vector<ExprPtr> args;
        expect_punct("(");
        if (!cur().is_punct(")")) {
            args.push_back(parse_expression());
            while (cur().is_punct(",")) {
                advance();
                args.push_back(parse_expression());
            }
        }
        expect_punct(")");
        return args;
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::IntLiteral:
            case TokenKind::DoubleLiteral:
            case TokenKind::StringLiteral:
            case TokenKind::CharLiteral: {
                auto e = make_expr(Expr::K::Literal, t.span);
                advance();
                return e;
            }
            case TokenKind::Keyword: {
                if (t.text == "true" || t.text == "false" || t.text == "null") {
                    auto e = make_expr(Expr::K::Literal, t.span);
                    advance();
                    return e;
                }
                if (t.text == "this") {
                    auto e = make_expr(Expr::K::This, t.span);
                    advance();
                    return e;
                }
                if (t.text == "new") {
                    advance();
                    if (cur().kind != TokenKind::Identifier) fail("expected class name after 'new'");
                    auto e = make_expr(Expr::K::New, cur().span);
                    e->name = std::string(cur().text);
                    advance();
                    e->args = parse_args();
                    return e;
                }
                if (t.text == "super") {
                    auto e = make_expr(Expr::K::SuperCall, t.span);
                    advance();
                    if (cur().is_punct("(")) {
                        e->args = parse_args();
                        return e;
                    }
                    expect_punct(".");
                    if (cur().kind != TokenKind::Identifier) fail("expected member after 'super.'");
                    e->name = std::string(cur().text);
                    e->span = cur().span;
                    advance();
                    e->args = parse_args();
                    return e;
                }
                fail("unexpected keyword '" + std::string(t.text) + "'");
            }
            case TokenKind::Identifier: {
                std::string name(t.text);
                Span span = t.span;
                advance();
                if (cur().is_punct("(")) {
                    auto call = make_expr(Expr::K::Call, span);
                    call->name = std::move(name);
                    call->args = parse_args();
                    return call;
                }
                auto e = make_expr(Expr::K::Name, span);
                e->name = std::move(name);
                return e;
            }
            case TokenKind::Punct:
                if (t.text == "(") {
                    advance();
                    ExprPtr inner = parse_expression();
                    expect_punct(")");
                    return inner;
                }
                fail("expected expression");
            default:
                fail("expected expression");
        }
    }

    // --- statements -----------------------------------------------------

    void parse_block() {
        expect_punct("{");
        push_scope();
        while (!cur().is_punct("}")) {
            if (cur().kind == TokenKind::EndOfFile)
                throw ParseError("unbalanced braces in method body", cur().span);
            parse_statement();
        }
        pop_scope();
        advance();  // '}'
    }

    void parse_statement() {
        const std::size_t start = pos_;
        const std::size_t events_before = method_.body.size();
        const std::size_t trys_before = method_.try_blocks.size();
        try {
            parse_statement_inner();
        } catch (const StmtSyntax& err) {
            // Partial parses leave no trace: the statement becomes one event.
            method_.body.resize(events_before);
            if (claimed_.size() > events_before) claimed_.resize(events_before);
            method_.try_blocks.resize(trys_before);
            recover_statement(start, err);
        }
    }

    // Skips the malformed statement and records it as one opaque LocalOp, but
    // only when it references no field or method of the class hierarchy.
    void recover_statement(std::size_t start, const StmtSyntax& err) {
        std::size_t p = start;
        int depth = 0;
        std::size_t end = start;
        for (;; ++p) {
            const Token& t = toks_[std::min(p, toks_.size() - 1)];
            if (t.kind == TokenKind::EndOfFile) throw ParseError(err.message, err.span);
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) {
                ++depth;
            } else if (t.is_punct(")") || t.is_punct("]")) {
                if (depth > 0) --depth;
            } else if (t.is_punct("}")) {
                if (depth == 0) { end = p; break; }
                --depth;
            } else if (t.is_punct(";") && depth == 0) {
                end = p + 1;
                break;
            }
        }
        if (end == start) throw ParseError(err.message, err.span);
        for (std::size_t k = start; k < end; ++k) {
            const Token& t = toks_[k];
            if (t.kind == TokenKind::Identifier &&
                tables_.has_member_named(cls_, std::string(t.text)))
                throw ParseError(err.message, err.span);
        }
        emit(EventKind::LocalOp, "<unparsed>",
             Span{toks_[start].span.begin, toks_[end - 1].span.end});
        pos_ = end;
    }

    void parse_statement_inner() {
        const Token& t = cur();
        if (t.is_punct("{")) { parse_block(); return; }
        if (t.is_punct(";")) { advance(); return; }
        if (t.is_kw("if")) {
            advance();
            expect_punct("(");
            ExprPtr cond = parse_expression();
            expect_punct(")");
            emit_expr(*cond);
            parse_statement();
            if (cur().is_kw("else")) {
                advance();
                parse_statement();
            }
            return;
        }
        if (t.is_kw("while")) {
            advance();
            expect_punct("(");
            ExprPtr cond = parse_expression();
            expect_punct(")");
            emit_expr(*cond);
            parse_statement();
            return;
        }
        if (t.is_kw("for")) {
            advance();
            push_scope();
            expect_punct("(");
            if (cur().is_punct(";")) {
                advance();
            } else if (looks_like_local_decl()) {
                parse_local_decl();
            } else {
                emit_expr_list();
                expect_punct(";");
            }
            if (!cur().is_punct(";")) {
                ExprPtr cond = parse_expression();
                emit_expr(*cond);
            }
            expect_punct(";");
            if (!cur().is_punct(")")) emit_expr_list();
            expect_punct(")");
            parse_statement();
            pop_scope();
            return;
        }
        if (t.is_kw("try")) { parse_try(); return; }
        if (t.is_kw("return")) {
            advance();
            if (!cur().is_punct(";")) {
                ExprPtr value = parse_expression();
                emit_expr(*value);
            }
            expect_punct(";");
            return;
        }
        if (looks_like_local_decl()) {
            parse_local_decl();
            return;
        }
        ExprPtr e = parse_expression();
        emit_expr(*e);
        expect_punct(";");
    }

    void emit_expr_list() {
        ExprPtr e = parse_expression();
        emit_expr(*e);
        while (cur().is_punct(",")) {
            advance();
            e = parse_expression();
            emit_expr(*e);
        }
    }

    bool looks_like_local_decl() const {
        if (is_type_keyword(cur())) return true;
        if (cur().kind != TokenKind::Identifier) return false;
        std::size_t p = pos_ + 1;
        while (toks_[p].is_punct("[") && toks_[std::min(p + 1, toks_.size() - 1)].is_punct("]"))
            p += 2;
        return toks_[std::min(p, toks_.size() - 1)].kind == TokenKind::Identifier;
    }

    std::string parse_type_text() {
        if (!is_type_keyword(cur()) && cur().kind != TokenKind::Identifier)
            fail("expected type");
        std::string type(cur().text);
        advance();
        while (cur().is_punct("[") && peek().is_punct("]")) {
            type += "[]";
            advance();
            advance();
        }
        return type;
    }

    void parse_local_decl() {
        parse_type_text();
        for (;;) {
            if (cur().kind != TokenKind::Identifier) fail("expected variable name");
            std::string name(cur().text);
            Span name_span = cur().span;
            advance();
            while (cur().is_punct("[") && peek().is_punct("]")) {
                advance();
                advance();
            }
            declare_local(name);
            emit(EventKind::LocalOp, name, name_span);
            if (cur().is_punct("=")) {
                advance();
                ExprPtr init = parse_expression();
                emit_expr(*init);
            }
            if (cur().is_punct(",")) {
                advance();
                continue;
            }
            break;
        }
        expect_punct(";");
    }

    void claim_range(std::size_t begin, std::size_t end) {
        if (claimed_.size() < method_.body.size()) claimed_.resize(method_.body.size(), 0);
        for (std::size_t i = begin; i < end; ++i) claimed_[i] = 1;
    }

    std::vector<Event> unclaimed_slice(std::size_t begin, std::size_t end) const {
        std::vector<Event> events;
        for (std::size_t i = begin; i < end; ++i) {
            if (i < claimed_.size() && claimed_[i]) continue;
            events.push_back(method_.body[i]);
        }
        return events;
    }

    void parse_try() {
        const Span try_start = cur().span;
        advance();  // 'try'
        const int number = ++try_counter_;

        const std::size_t body_begin = method_.body.size();
        if (!cur().is_punct("{")) fail("expected '{' after 'try'");
        parse_block();
        const std::size_t body_end = method_.body.size();

        if (!cur().is_kw("catch")) fail("expected 'catch' after try block");
        std::string exception_type;
        const std::size_t handler_begin = method_.body.size();
        Span last_catch_end = cur().span;
        while (cur().is_kw("catch")) {
            advance();
            expect_punct("(");
            std::string type = parse_type_text();
            if (exception_type.empty()) exception_type = type;
            std::string var;
            if (cur().kind == TokenKind::Identifier) {
                var = std::string(cur().text);
                advance();
            }
            expect_punct(")");
            push_scope();
            if (!var.empty()) declare_local(var);
            if (!cur().is_punct("{")) fail("expected '{' after catch header");
            parse_block();
            pop_scope();
            last_catch_end = toks_[pos_ - 1].span;
        }
        const std::size_t handler_end = method_.body.size();

        TryBlock block;
        block.id = "try" + std::to_string(number);
        block.exception_type = std::move(exception_type);
        block.span = Span{try_start.begin, last_catch_end.end};
        block.body_events = unclaimed_slice(body_begin, body_end);
        block.handler_events = unclaimed_slice(handler_begin, handler_end);
        claim_range(body_begin, body_end);
        claim_range(handler_begin, handler_end);
        method_.try_blocks.push_back(std::move(block));

        if (cur().is_kw("finally")) {
            advance();
            if (!cur().is_punct("{")) fail("expected '{' after 'finally'");
            parse_block();  // events stay with the method
        }
    }
};

struct PendingBody {
    std::size_t class_index;
    std::size_t method_index;
    std::size_t token_begin;  // index of the opening '{'
};

// Structural pass: class headers, fields, method signatures and body token
// ranges. Bodies are parsed afterwards, once every class header is known
// (across all units of one analysis, so inherited members resolve).
class UnitParser {
public:
    UnitParser(std::string_view path, std::string_view text, const std::vector<Token>& toks)
        : path_(path), text_(text), toks_(toks) {}

    SourceUnit parse_structure(std::vector<PendingBody>& bodies) {
        SourceUnit unit;
        unit.path = std::string(path_);
        unit.text = std::string(text_);

        std::set<std::string> class_names;
        while (cur().kind != TokenKind::EndOfFile) {
            parse_class(unit.classes, bodies);
            const std::string& name = unit.classes.back().name;
            if (!class_names.insert(name).second)
                throw DuplicateMember("duplicate class '" + name + "'",
                                      unit.classes.back().span);
        }
        return unit;
    }

    static void parse_bodies(SourceUnit& unit, const std::vector<Token>& toks,
                             const Tables& tables, const std::vector<PendingBody>& bodies) {
        for (const auto& pending : bodies) {
            ClassModel& cls = unit.classes[pending.class_index];
            MethodDecl& method = cls.methods[pending.method_index];
            BodyParser body(toks, tables, cls.name, method);
            body.parse_range(pending.token_begin);
        }
    }

private:
    std::string_view path_;
    std::string_view text_;
    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        return toks_[std::min(pos_ + n, toks_.size() - 1)];
    }
    void advance() { if (cur().kind != TokenKind::EndOfFile) ++pos_; }

    void expect_punct(std::string_view p, const char* what) {
        if (!cur().is_punct(p)) throw ParseError(std::string(what), cur().span);
        advance();
    }

    std::string parse_type_text() {
        if (!is_type_keyword(cur()) && cur().kind != TokenKind::Identifier &&
            !cur().is_kw("void"))
            throw ParseError("expected type", cur().span);
        std::string type(cur().text);
        advance();
        while (cur().is_punct("[") && peek().is_punct("]")) {
            type += "[]";
            advance();
            advance();
        }
        return type;
    }

    // Skips a balanced token run up to a top-level ',' or ';' (field
    // initializers carry no relation events).
    void skip_initializer() {
        int depth = 0;
        for (;;) {
            const Token& t = cur();
            if (t.kind == TokenKind::EndOfFile)
                throw ParseError("unterminated field initializer", t.span);
            if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
            else if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
            else if ((t.is_punct(",") || t.is_punct(";")) && depth == 0) return;
            advance();
        }
    }

    std::size_t skip_balanced_braces() {
        const Span open = cur().span;
        const std::size_t begin = pos_;
        expect_punct("{", "expected '{'");
        int depth = 1;
        while (depth > 0) {
            if (cur().kind == TokenKind::EndOfFile)
                throw ParseError("unbalanced braces", open);
            if (cur().is_punct("{")) ++depth;
            else if (cur().is_punct("}")) --depth;
            advance();
        }
        return begin;
    }

    void parse_class(std::vector<ClassModel>& classes, std::vector<PendingBody>& bodies) {
        bool is_abstract = false;
        while (is_modifier(cur())) {
            if (cur().is_kw("abstract")) is_abstract = true;
            advance();
        }
        if (!cur().is_kw("class"))
            throw ParseError("expected 'class'", cur().span);
        const Span class_start = cur().span;
        advance();
        if (cur().kind != TokenKind::Identifier)
            throw ParseError("missing class name", cur().span);

        ClassModel cls;
        cls.name = std::string(cur().text);
        cls.is_abstract = is_abstract;
        advance();
        if (cur().is_kw("extends")) {
            advance();
            if (cur().kind != TokenKind::Identifier)
                throw ParseError("missing superclass name", cur().span);
            cls.superclass = std::string(cur().text);
            advance();
        }
        expect_punct("{", "expected '{' after class header");

        const std::size_t class_index = classes.size();
        classes.push_back(std::move(cls));
        ClassModel& out = classes[class_index];

        std::set<std::string> field_names;
        std::set<std::string> method_keys;
        while (!cur().is_punct("}")) {
            if (cur().kind == TokenKind::EndOfFile)
                throw ParseError("unbalanced braces in class body", class_start);
            if (cur().is_punct(";")) { advance(); continue; }
            parse_member(out, class_index, bodies, field_names, method_keys);
        }
        out.span = Span{class_start.begin, cur().span.end};
        advance();  // '}'

        if (!out.is_abstract) {
            for (const auto& m : out.methods)
                if (!m.has_body) { out.is_abstract = true; break; }
        }
    }

    void parse_member(ClassModel& cls, std::size_t class_index, std::vector<PendingBody>& bodies,
                      std::set<std::string>& field_names, std::set<std::string>& method_keys) {
        while (is_modifier(cur())) advance();

        const Span member_start = cur().span;

        // Constructor: the class name followed directly by '('.
        if (cur().kind == TokenKind::Identifier && cur().text == cls.name &&
            peek().is_punct("(")) {
            MethodDecl ctor;
            ctor.name = cls.name;
            ctor.is_constructor = true;
            advance();
            parse_params(ctor);
            finish_method(cls, class_index, bodies, method_keys, std::move(ctor), member_start);
            return;
        }

        std::string type = parse_type_text();
        if (cur().kind != TokenKind::Identifier)
            throw ParseError("expected member name", cur().span);
        std::string name(cur().text);
        Span name_span = cur().span;
        advance();

        if (cur().is_punct("(")) {
            MethodDecl method;
            method.name = std::move(name);
            method.return_type = std::move(type);
            parse_params(method);
            finish_method(cls, class_index, bodies, method_keys, std::move(method), member_start);
            return;
        }

        // Field declarator list: `int i, j;` with optional initializers.
        for (;;) {
            std::string field_type = type;
            while (cur().is_punct("[") && peek().is_punct("]")) {
                field_type += "[]";
                advance();
                advance();
            }
            if (!field_names.insert(name).second)
                throw DuplicateMember("duplicate field '" + name + "' in class " + cls.name,
                                      name_span);
            cls.fields.push_back(FieldDecl{name, field_type, name_span});
            if (cur().is_punct("=")) {
                advance();
                skip_initializer();
            }
            if (cur().is_punct(",")) {
                advance();
                if (cur().kind != TokenKind::Identifier)
                    throw ParseError("expected field name", cur().span);
                name = std::string(cur().text);
                name_span = cur().span;
                advance();
                continue;
            }
            expect_punct(";", "expected ';' after field declaration");
            break;
        }
    }

    void parse_params(MethodDecl& method) {
        expect_punct("(", "expected '('");
        if (!cur().is_punct(")")) {
            for (;;) {
                Param p;
                p.type = parse_type_text();
                if (cur().kind == TokenKind::Identifier) {
                    p.name = std::string(cur().text);
                    advance();
                    while (cur().is_punct("[") && peek().is_punct("]")) {
                        p.type += "[]";
                        advance();
                        advance();
                    }
                }
                method.params.push_back(std::move(p));
                if (cur().is_punct(",")) { advance(); continue; }
                break;
            }
        }
        expect_punct(")", "expected ')' after parameters");
        if (cur().kind == TokenKind::Identifier && cur().text == "throws") {
            advance();
            for (;;) {
                if (cur().kind != TokenKind::Identifier)
                    throw ParseError("expected exception type", cur().span);
                advance();
                if (cur().is_punct(",")) { advance(); continue; }
                break;
            }
        }
    }

    void finish_method(ClassModel& cls, std::size_t class_index, std::vector<PendingBody>& bodies,
                       std::set<std::string>& method_keys, MethodDecl method,
                       Span member_start) {
        const std::string key = method.signature() + (method.is_constructor ? "#ctor" : "");
        if (!method_keys.insert(key).second)
            throw DuplicateMember("duplicate method '" + method.signature() + "' in class " +
                                      cls.name,
                                  member_start);

        if (cur().is_punct(";")) {
            method.has_body = false;
            method.span = Span{member_start.begin, cur().span.end};
            advance();
            cls.methods.push_back(std::move(method));
            return;
        }
        if (!cur().is_punct("{"))
            throw ParseError("expected method body or ';'", cur().span);

        const std::size_t body_begin = skip_balanced_braces();
        method.has_body = true;
        method.span = Span{member_start.begin, toks_[pos_ - 1].span.end};
        cls.methods.push_back(std::move(method));
        bodies.push_back(PendingBody{class_index, cls.methods.size() - 1, body_begin});
    }
};

}  // namespace

SourceUnit parse_unit(std::string_view path, std::string_view text,
                      const std::vector<Token>& tokens) {
    UnitParser parser(path, text, tokens);
    std::vector<PendingBody> bodies;
    SourceUnit unit = parser.parse_structure(bodies);
    Tables tables;
    for (const auto& cls : unit.classes) tables.add(cls);
    UnitParser::parse_bodies(unit, tokens, tables, bodies);
    return unit;
}

SourceUnit parse_source(std::string_view path, std::string_view text) {
    return parse_unit(path, text, tokenize(text));
}

std::vector<SourceUnit> parse_sources(
    const std::vector<std::pair<std::string, std::string>>& named_sources) {
    std::vector<SourceUnit> units;
    std::vector<std::vector<Token>> tokens;
    std::vector<std::vector<PendingBody>> bodies(named_sources.size());

    for (std::size_t i = 0; i < named_sources.size(); ++i) {
        const auto& [path, text] = named_sources[i];
        try {
            tokens.push_back(tokenize(text));
            UnitParser parser(path, text, tokens.back());
            units.push_back(parser.parse_structure(bodies[i]));
        } catch (AnalysisError& e) {
            e.set_path(path);
            throw;
        }
    }

    // One resolution universe across every unit. Moving a SourceUnit does not
    // move its ClassModel storage, so the table may point into `units`.
    Tables tables;
    for (const auto& unit : units) {
        try {
            for (const auto& cls : unit.classes) tables.add(cls);
        } catch (AnalysisError& e) {
            e.set_path(unit.path);
            throw;
        }
    }

    for (std::size_t i = 0; i < units.size(); ++i) {
        try {
            UnitParser::parse_bodies(units[i], tokens[i], tables, bodies[i]);
        } catch (AnalysisError& e) {
            e.set_path(units[i].path);
            throw;
        }
    }
    return units;
}

}  // namespace xray
