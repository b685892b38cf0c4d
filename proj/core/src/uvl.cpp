#include "multiwise/uvl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "multiwise/errors.hpp"

namespace multiwise {

// ---------------------------------------------------------------------------
// Formula

Formula::Ptr Formula::var(std::string name) {
    return Ptr(new Formula(Op::Var, std::move(name), nullptr, nullptr));
}
Formula::Ptr Formula::negation(Ptr f) {
    return Ptr(new Formula(Op::Not, {}, std::move(f), nullptr));
}
Formula::Ptr Formula::conjunction(Ptr lhs, Ptr rhs) {
    return Ptr(new Formula(Op::And, {}, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::disjunction(Ptr lhs, Ptr rhs) {
    return Ptr(new Formula(Op::Or, {}, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::implies(Ptr lhs, Ptr rhs) {
    return Ptr(new Formula(Op::Implies, {}, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::iff(Ptr lhs, Ptr rhs) {
    return Ptr(new Formula(Op::Iff, {}, std::move(lhs), std::move(rhs)));
}

bool Formula::evaluate(const std::function<bool(const std::string&)>& selected) const {
    switch (op_) {
    case Op::Var:
        return selected(name_);
    case Op::Not:
        return !lhs_->evaluate(selected);
    case Op::And:
        return lhs_->evaluate(selected) && rhs_->evaluate(selected);
    case Op::Or:
        return lhs_->evaluate(selected) || rhs_->evaluate(selected);
    case Op::Implies:
        return !lhs_->evaluate(selected) || rhs_->evaluate(selected);
    case Op::Iff:
        return lhs_->evaluate(selected) == rhs_->evaluate(selected);
    }
    return false;
}

void Formula::collect_names(std::vector<std::string>& out) const {
    if (op_ == Op::Var) {
        out.push_back(name_);
        return;
    }
    if (lhs_) lhs_->collect_names(out);
    if (rhs_) rhs_->collect_names(out);
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.op_ != b.op_) return false;
    if (a.op_ == Formula::Op::Var) return a.name_ == b.name_;
    return equal(a.lhs_, b.lhs_) && equal(a.rhs_, b.rhs_);
}

bool equal(const Formula::Ptr& a, const Formula::Ptr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

bool operator==(const FeatureNode& a, const FeatureNode& b) {
    if (a.name != b.name || a.kind != b.kind || a.mandatory != b.mandatory ||
        a.children.size() != b.children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!(a.children[i] == b.children[i])) return false;
    }
    return true;
}

bool operator==(const FeatureTree& a, const FeatureTree& b) {
    if (!(a.root == b.root) || a.constraints.size() != b.constraints.size()) return false;
    for (std::size_t i = 0; i < a.constraints.size(); ++i) {
        if (!equal(a.constraints[i], b.constraints[i])) return false;
    }
    return true;
}

namespace {

void collect_features(const FeatureNode& node, std::vector<std::string>& out) {
    out.push_back(node.name);
    for (const auto& child : node.children) collect_features(child, out);
}

}  // namespace

std::vector<std::string> FeatureTree::feature_names() const {
    std::vector<std::string> out;
    collect_features(root, out);
    return out;
}

// ---------------------------------------------------------------------------
// Constraint expression parsing
//
// Precedence, loosest first: <=> (left), => (right), |, &, !.

namespace {

struct Token {
    enum class Kind { Ident, Not, And, Or, Implies, Iff, LParen, RParen, End };
    Kind kind;
    std::string text;
    int column;  // 1-based
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class ExprLexer {
public:
    ExprLexer(std::string_view text, int line) : text_(text), line_(line) {}

    Token next() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) return {Token::Kind::End, "", col};
        char c = text_[pos_];
        switch (c) {
        case '!':
            ++pos_;
            return {Token::Kind::Not, "!", col};
        case '&':
            ++pos_;
            return {Token::Kind::And, "&", col};
        case '|':
            ++pos_;
            return {Token::Kind::Or, "|", col};
        case '(':
            ++pos_;
            return {Token::Kind::LParen, "(", col};
        case ')':
            ++pos_;
            return {Token::Kind::RParen, ")", col};
        case '=':
            if (text_.substr(pos_, 2) == "=>") {
                pos_ += 2;
                return {Token::Kind::Implies, "=>", col};
            }
            throw ParseError("expected '=>'", line_, col);
        case '<':
            if (text_.substr(pos_, 3) == "<=>") {
                pos_ += 3;
                return {Token::Kind::Iff, "<=>", col};
            }
            throw ParseError("expected '<=>'", line_, col);
        default:
            break;
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            return {Token::Kind::Ident, std::string(text_.substr(start, pos_ - start)), col};
        }
        throw ParseError(std::string("unexpected character '") + c + "' in constraint",
                         line_, col);
    }

private:
    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

class ExprParser {
public:
    ExprParser(std::string_view text, int line) : lexer_(text, line), line_(line) {
        advance();
    }

    Formula::Ptr parse() {
        Formula::Ptr f = parse_iff();
        expect(Token::Kind::End, "end of constraint");
        return f;
    }

private:
    void advance() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (current_.kind != kind) {
            throw ParseError(std::string("expected ") + what, line_, current_.column);
        }
    }

    Formula::Ptr parse_iff() {
        Formula::Ptr lhs = parse_implies();
        while (current_.kind == Token::Kind::Iff) {
            advance();
            lhs = Formula::iff(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    Formula::Ptr parse_implies() {
        Formula::Ptr lhs = parse_or();
        if (current_.kind == Token::Kind::Implies) {
            advance();
            return Formula::implies(std::move(lhs), parse_implies());  // right-assoc
        }
        return lhs;
    }

    Formula::Ptr parse_or() {
        Formula::Ptr lhs = parse_and();
        while (current_.kind == Token::Kind::Or) {
            advance();
            lhs = Formula::disjunction(std::move(lhs), parse_and());
        }
        return lhs;
    }

    Formula::Ptr parse_and() {
        Formula::Ptr lhs = parse_unary();
        while (current_.kind == Token::Kind::And) {
            advance();
            lhs = Formula::conjunction(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Formula::Ptr parse_unary() {
        if (current_.kind == Token::Kind::Not) {
            advance();
            return Formula::negation(parse_unary());
        }
        if (current_.kind == Token::Kind::LParen) {
            advance();
            Formula::Ptr inner = parse_iff();
            expect(Token::Kind::RParen, "')'");
            advance();
            return inner;
        }
        expect(Token::Kind::Ident, "feature name");
        Formula::Ptr f = Formula::var(current_.text);
        advance();
        return f;
    }

    ExprLexer lexer_;
    int line_;
    Token current_;
};

}  // namespace

Formula::Ptr parse_constraint(std::string_view text, int line_number) {
    return ExprParser(text, line_number).parse();
}

// ---------------------------------------------------------------------------
// Document parsing

namespace {

struct Line {
    int number;  // 1-based
    int indent;  // spaces
    std::string text;
};

const char* const kKeywords[] = {"features",  "constraints", "mandatory",
                                 "optional",  "or",          "alternative"};

bool is_keyword(const std::string& word) {
    return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        ++number;
        if (end == std::string_view::npos && raw.empty() && pos >= text.size()) break;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::size_t i = 0;
        while (i < raw.size() && raw[i] == ' ') ++i;
        if (i < raw.size() && raw[i] == '\t') {
            throw ParseError("tab in indentation; spaces only", number,
                             static_cast<int>(i) + 1);
        }
        std::string_view body = raw.substr(i);
        while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) {
            body.remove_suffix(1);
        }
        if (!body.empty()) {
            lines.push_back({number, static_cast<int>(i), std::string(body)});
        }
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return lines;
}

class TreeParser {
public:
    explicit TreeParser(const std::vector<Line>& lines) : lines_(lines) {}

    FeatureTree parse() {
        if (lines_.empty()) throw ParseError("empty document", 1);
        expect_section("features", 0);
        ++cursor_;
        if (done() || current().indent <= 0) {
            throw ParseError("expected indented root feature", line_number());
        }

        FeatureTree tree;
        tree.root = parse_feature(current().indent);
        if (!done()) {
            if (current().indent != 0 || current().text != "constraints") {
                throw ParseError("expected 'constraints' or end of document; found '" +
                                     current().text + "'",
                                 line_number());
            }
            ++cursor_;
            while (!done()) {
                tree.constraints.push_back(parse_constraint(current().text, current().number));
                ++cursor_;
            }
        }
        validate(tree);
        return tree;
    }

private:
    bool done() const { return cursor_ >= lines_.size(); }
    const Line& current() const { return lines_[cursor_]; }
    int line_number() const { return done() ? lines_.back().number + 1 : current().number; }

    void expect_section(const char* word, int indent) {
        if (done() || current().indent != indent || current().text != word) {
            throw ParseError(std::string("expected '") + word + "'", line_number());
        }
    }

    std::string expect_name() {
        const Line& line = current();
        if (is_keyword(line.text)) {
            throw ParseError("'" + line.text + "' cannot be used as a feature name",
                             line.number);
        }
        if (!ident_start(line.text[0]) ||
            !std::all_of(line.text.begin(), line.text.end(), ident_char)) {
            throw ParseError("invalid feature name '" + line.text + "'", line.number);
        }
        return line.text;
    }

    // Indent of the children of the node at `parent_indent`, or -1 if none.
    int child_indent(int parent_indent) const {
        if (done() || current().indent <= parent_indent) return -1;
        return current().indent;
    }

    FeatureNode parse_feature(int indent) {
        FeatureNode node;
        node.name = expect_name();
        ++cursor_;

        int inner = child_indent(indent);
        if (inner < 0) return node;

        bool has_group = false;
        bool has_and_children = false;
        while (!done() && current().indent > indent) {
            if (current().indent != inner) {
                throw ParseError("inconsistent indentation", current().number);
            }
            const std::string& word = current().text;
            if (word == "or" || word == "alternative") {
                if (has_group || has_and_children) {
                    throw ParseError(
                        "'" + word + "' group cannot be mixed with other child blocks",
                        current().number);
                }
                node.kind = word == "or" ? GroupKind::Or : GroupKind::Alt;
                has_group = true;
                parse_block_children(node, inner, false);
            } else if (word == "mandatory" || word == "optional") {
                if (has_group) {
                    throw ParseError("cannot mix '" + word + "' with an or/alternative group",
                                     current().number);
                }
                has_and_children = true;
                parse_block_children(node, inner, word == "mandatory");
            } else {
                // Bare feature child: an optional and-child.
                if (has_group) {
                    throw ParseError("cannot mix features with an or/alternative group",
                                     current().number);
                }
                has_and_children = true;
                node.children.push_back(parse_feature(inner));
            }
        }
        return node;
    }

    // Children of a mandatory/optional/or/alternative block line.
    void parse_block_children(FeatureNode& node, int block_indent, bool mandatory) {
        const Line& block = current();
        ++cursor_;
        int inner = child_indent(block_indent);
        if (inner < 0) {
            throw ParseError("empty '" + block.text + "' block", block.number);
        }
        while (!done() && current().indent > block_indent) {
            if (current().indent != inner) {
                throw ParseError("inconsistent indentation", current().number);
            }
            if (is_keyword(current().text)) {
                throw ParseError("expected feature name under '" + block.text + "'",
                                 current().number);
            }
            FeatureNode child = parse_feature(inner);
            child.mandatory = mandatory;
            node.children.push_back(std::move(child));
        }
    }

    void validate(const FeatureTree& tree) const {
        std::vector<std::string> names = tree.feature_names();
        std::map<std::string, int> seen;
        for (const auto& name : names) {
            if (++seen[name] == 2) {
                throw ParseError("duplicate feature name '" + name + "'");
            }
        }
        for (const auto& constraint : tree.constraints) {
            std::vector<std::string> referenced;
            constraint->collect_names(referenced);
            for (const auto& name : referenced) {
                if (!seen.count(name)) {
                    throw ParseError("constraint references unknown feature '" + name + "'");
                }
            }
        }
    }

    const std::vector<Line>& lines_;
    std::size_t cursor_ = 0;
};

}  // namespace

FeatureTree parse_uvl(std::string_view text) {
    std::vector<Line> lines = split_lines(text);
    return TreeParser(lines).parse();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kIndentWidth = 4;

void print_indent(std::ostringstream& out, int depth) {
    for (int i = 0; i < depth * kIndentWidth; ++i) out << ' ';
}

void print_node(std::ostringstream& out, const FeatureNode& node, int depth) {
    print_indent(out, depth);
    out << node.name << '\n';
    if (node.children.empty()) return;

    if (node.kind == GroupKind::Or || node.kind == GroupKind::Alt) {
        print_indent(out, depth + 1);
        out << (node.kind == GroupKind::Or ? "or" : "alternative") << '\n';
        for (const auto& child : node.children) print_node(out, child, depth + 2);
        return;
    }
    // And-children: one block per maximal run of the same flag.
    std::size_t i = 0;
    while (i < node.children.size()) {
        bool mandatory = node.children[i].mandatory;
        print_indent(out, depth + 1);
        out << (mandatory ? "mandatory" : "optional") << '\n';
        while (i < node.children.size() && node.children[i].mandatory == mandatory) {
            print_node(out, node.children[i], depth + 2);
            ++i;
        }
    }
}

int precedence(Formula::Op op) {
    switch (op) {
    case Formula::Op::Iff:
        return 1;
    case Formula::Op::Implies:
        return 2;
    case Formula::Op::Or:
        return 3;
    case Formula::Op::And:
        return 4;
    case Formula::Op::Not:
    case Formula::Op::Var:
        return 5;
    }
    return 5;
}

void print_formula(std::ostringstream& out, const Formula& f, int parent_prec) {
    int prec = precedence(f.op());
    bool parens = prec < parent_prec;
    if (parens) out << '(';
    switch (f.op()) {
    case Formula::Op::Var:
        out << f.name();
        break;
    case Formula::Op::Not:
        out << '!';
        print_formula(out, *f.lhs(), prec);
        break;
    case Formula::Op::And:
    case Formula::Op::Or: {
        const char* sym = f.op() == Formula::Op::And ? " & " : " | ";
        print_formula(out, *f.lhs(), prec);
        out << sym;
        print_formula(out, *f.rhs(), prec + 1);
        break;
    }
    case Formula::Op::Implies:
        print_formula(out, *f.lhs(), prec + 1);  // right-assoc
        out << " => ";
        print_formula(out, *f.rhs(), prec);
        break;
    case Formula::Op::Iff:
        print_formula(out, *f.lhs(), prec);
        out << " <=> ";
        print_formula(out, *f.rhs(), prec + 1);
        break;
    }
    if (parens) out << ')';
}

}  // namespace

std::string format_constraint(const Formula::Ptr& formula) {
    std::ostringstream out;
    print_formula(out, *formula, 0);
    return out.str();
}

std::string write_uvl(const FeatureTree& tree) {
    std::ostringstream out;
    out << "features\n";
    print_node(out, tree.root, 1);
    if (!tree.constraints.empty()) {
        out << "constraints\n";
        for (const auto& constraint : tree.constraints) {
            print_indent(out, 1);
            out << format_constraint(constraint) << '\n';
        }
    }
    return out.str();
}

}  // namespace multiwise
