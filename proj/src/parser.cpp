#include "frob/parser.hpp"

#include <cctype>

namespace frob {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= text_.size()) {
            tok_ = {Token::End, "", start};
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
            tok_ = {Token::Number, text_.substr(start, i_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
                ++i_;
            tok_ = {Token::Ident, text_.substr(start, i_ - start), start};
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_ = {Token::Plus, "+", start}; return;
            case '-': tok_ = {Token::Minus, "-", start}; return;
            case '*': tok_ = {Token::Star, "*", start}; return;
            case '/': tok_ = {Token::Slash, "/", start}; return;
            case '^': tok_ = {Token::Caret, "^", start}; return;
            case '(': tok_ = {Token::LParen, "(", start}; return;
            case ')': tok_ = {Token::RParen, ")", start}; return;
            default: throw parse_error(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_{Token::End, "", 0};
};

class Parser {
  public:
    Parser(const std::string& text, RingPtr ring) : lex_(text), ring_(std::move(ring)) {}

    RationalFunction parse() {
        RationalFunction v = expression();
        if (lex_.peek().kind != Token::End)
            throw parse_error("trailing input", lex_.peek().pos);
        return v;
    }

  private:
    RationalFunction expression() {
        RationalFunction v = term();
        while (true) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Plus) {
                lex_.take();
                v = v + term();
            } else if (k == Token::Minus) {
                lex_.take();
                v = v - term();
            } else {
                return v;
            }
        }
    }

    RationalFunction term() {
        RationalFunction v = unary();
        while (true) {
            Token::Kind k = lex_.peek().kind;
            if (k == Token::Star) {
                lex_.take();
                v = v * unary();
            } else if (k == Token::Slash) {
                Token t = lex_.take();
                RationalFunction d = unary();
                if (d.is_zero()) throw parse_error("division by zero", t.pos);
                v = v / d;
            } else if (k == Token::Number || k == Token::Ident || k == Token::LParen) {
                throw parse_error("implicit multiplication is not allowed; use '*'",
                                  lex_.peek().pos);
            } else {
                return v;
            }
        }
    }

    RationalFunction unary() {
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            return -unary();
        }
        return power();
    }

    RationalFunction power() {
        RationalFunction base = atom();
        if (lex_.peek().kind == Token::Caret) {
            Token caret = lex_.take();
            bool neg = false;
            if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                neg = true;
            }
            if (lex_.peek().kind != Token::Number)
                throw parse_error("exponent must be an integer", caret.pos);
            Token e = lex_.take();
            long exp = std::stol(e.text);
            if (neg) throw parse_error("negative exponent; use division instead", e.pos);
            return base.pow(exp);
        }
        return base;
    }

    RationalFunction atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Number:
                return RationalFunction(
                    MultiPoly::constant(ring_, rat_from_string(t.text)));
            case Token::Ident: {
                if (t.text == "sqrt5") {
                    if (ring_->tag() != FieldTag::QSqrt5)
                        throw parse_error("sqrt5 outside a Q(sqrt5) context", t.pos);
                    return RationalFunction(
                        MultiPoly::constant(ring_, FieldElement::sqrt5()));
                }
                if (!ring_->find(t.text))
                    throw parse_error("unknown variable '" + t.text + "'", t.pos);
                return RationalFunction(MultiPoly::variable(ring_, t.text));
            }
            case Token::LParen: {
                RationalFunction v = expression();
                if (lex_.peek().kind != Token::RParen)
                    throw parse_error("expected ')'", lex_.peek().pos);
                lex_.take();
                return v;
            }
            case Token::End:
                throw parse_error("unexpected end of input", t.pos);
            default:
                throw parse_error("unexpected token '" + t.text + "'", t.pos);
        }
    }

    Lexer lex_;
    RingPtr ring_;
};

}  // namespace

RationalFunction parse_expression(const std::string& text, const RingPtr& ring) {
    return Parser(text, ring).parse();
}

MultiPoly parse_poly(const std::string& text, const RingPtr& ring) {
    RationalFunction v = parse_expression(text, ring);
    if (!v.is_polynomial()) throw value_error("expected polynomial, got: " + text);
    return v.as_poly();
}

}  // namespace frob
