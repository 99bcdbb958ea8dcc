#include <rabinato/parser.hpp>

#include <cctype>
#include <memory>
#include <vector>

namespace rabinato
{
  namespace
  {
    enum class tok
    {
      end,
      lparen,
      rparen,
      bang,
      next,
      eventually,
      always,
      until,
      conj,
      disj,
      implies,
      equiv,
      tt,
      ff,
      atom,
    };

    struct token
    {
      tok type;
      std::size_t pos;
      std::string text;
    };

    std::vector<token>
    tokenize(std::string_view s)
    {
      std::vector<token> out;
      std::size_t i = 0;
      while (i < s.size())
        {
          char c = s[i];
          if (std::isspace(static_cast<unsigned char>(c)))
            {
              ++i;
              continue;
            }
          std::size_t start = i;
          auto simple = [&](tok t, std::size_t len) {
            out.push_back({t, start, std::string(s.substr(start, len))});
            i += len;
          };
          switch (c)
            {
            case '(': simple(tok::lparen, 1); continue;
            case ')': simple(tok::rparen, 1); continue;
            case '!': simple(tok::bang, 1); continue;
            case 'X': simple(tok::next, 1); continue;
            case 'F': simple(tok::eventually, 1); continue;
            case 'G': simple(tok::always, 1); continue;
            case 'U': simple(tok::until, 1); continue;
            case '&': simple(tok::conj, 1); continue;
            case '|': simple(tok::disj, 1); continue;
            default: break;
            }
          if (s.substr(i, 2) == "->")
            {
              simple(tok::implies, 2);
              continue;
            }
          if (s.substr(i, 3) == "<->")
            {
              simple(tok::equiv, 3);
              continue;
            }
          if (c >= 'a' && c <= 'z')
            {
              std::size_t j = i + 1;
              while (j < s.size()
                     && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
              std::string word(s.substr(i, j - i));
              tok t = tok::atom;
              if (word == "tt" || word == "true")
                t = tok::tt;
              else if (word == "ff" || word == "false")
                t = tok::ff;
              out.push_back({t, start, std::move(word)});
              i = j;
              continue;
            }
          throw parse_error(std::string("unexpected character '") + c + "'", i);
        }
      out.push_back({tok::end, s.size(), ""});
      return out;
    }

    // Parse tree before normalisation; negation and the derived connectives
    // are eliminated when converting to a formula.
    struct ast
    {
      tok op;
      std::size_t pos;
      std::string name;
      std::unique_ptr<ast> l, r;
    };
    using ast_ptr = std::unique_ptr<ast>;

    ast_ptr
    make(tok op, std::size_t pos, ast_ptr l = nullptr, ast_ptr r = nullptr)
    {
      auto a = std::make_unique<ast>();
      a->op = op;
      a->pos = pos;
      a->l = std::move(l);
      a->r = std::move(r);
      return a;
    }

    class parser
    {
    public:
      explicit parser(std::vector<token> toks) : toks_(std::move(toks)) {}

      ast_ptr
      parse_all()
      {
        ast_ptr a = parse_equiv();
        if (peek().type != tok::end)
          throw parse_error("unexpected '" + peek().text + "'", peek().pos);
        return a;
      }

    private:
      const token& peek() const { return toks_[i_]; }
      const token& advance() { return toks_[i_++]; }

      ast_ptr
      parse_equiv()
      {
        ast_ptr lhs = parse_implies();
        while (peek().type == tok::equiv)
          {
            std::size_t pos = advance().pos;
            lhs = make(tok::equiv, pos, std::move(lhs), parse_implies());
          }
        return lhs;
      }

      ast_ptr
      parse_implies()
      {
        ast_ptr lhs = parse_binary(tok::disj);
        if (peek().type == tok::implies)
          {
            std::size_t pos = advance().pos;
            return make(tok::implies, pos, std::move(lhs), parse_implies());
          }
        return lhs;
      }

      // Left-associative | and &.
      ast_ptr
      parse_binary(tok op)
      {
        auto operand = [&] { return op == tok::disj ? parse_binary(tok::conj) : parse_until(); };
        ast_ptr lhs = operand();
        while (peek().type == op)
          {
            std::size_t pos = advance().pos;
            lhs = make(op, pos, std::move(lhs), operand());
          }
        return lhs;
      }

      ast_ptr
      parse_until()
      {
        ast_ptr lhs = parse_unary();
        if (peek().type == tok::until)
          {
            std::size_t pos = advance().pos;
            return make(tok::until, pos, std::move(lhs), parse_until());
          }
        return lhs;
      }

      ast_ptr
      parse_unary()
      {
        const token& t = peek();
        switch (t.type)
          {
          case tok::bang:
          case tok::next:
          case tok::eventually:
          case tok::always:
            {
              advance();
              return make(t.type, t.pos, parse_unary());
            }
          case tok::lparen:
            {
              advance();
              ast_ptr inner = parse_equiv();
              if (peek().type != tok::rparen)
                throw parse_error("expected ')'", peek().pos);
              advance();
              return inner;
            }
          case tok::tt:
          case tok::ff:
            advance();
            return make(t.type, t.pos);
          case tok::atom:
            {
              advance();
              ast_ptr a = make(tok::atom, t.pos);
              a->name = t.text;
              return a;
            }
          case tok::end:
            throw parse_error("unexpected end of input", t.pos);
          default:
            throw parse_error("unexpected '" + t.text + "'", t.pos);
          }
      }

      std::vector<token> toks_;
      std::size_t i_ = 0;
    };

    formula
    to_nnf(formula_factory& ff, const ast& a, bool positive)
    {
      switch (a.op)
        {
        case tok::tt:
          return ff.constant(positive);
        case tok::ff:
          return ff.constant(!positive);
        case tok::atom:
          return positive ? ff.atom(a.name) : ff.neg_atom(a.name);
        case tok::bang:
          return to_nnf(ff, *a.l, !positive);
        case tok::conj:
        case tok::disj:
          {
            formula l = to_nnf(ff, *a.l, positive);
            formula r = to_nnf(ff, *a.r, positive);
            bool is_and = (a.op == tok::conj) == positive;
            return is_and ? ff.land(l, r) : ff.lor(l, r);
          }
        case tok::implies:
          {
            formula l = to_nnf(ff, *a.l, !positive);
            formula r = to_nnf(ff, *a.r, positive);
            return positive ? ff.lor(l, r) : ff.land(l, r);
          }
        case tok::equiv:
          {
            formula lp = to_nnf(ff, *a.l, true);
            formula ln = to_nnf(ff, *a.l, false);
            formula rp = to_nnf(ff, *a.r, positive);
            formula rn = to_nnf(ff, *a.r, !positive);
            return ff.lor(ff.land(lp, rp), ff.land(ln, rn));
          }
        case tok::next:
          return ff.next(to_nnf(ff, *a.l, positive));
        case tok::eventually:
          {
            formula c = to_nnf(ff, *a.l, positive);
            return positive ? ff.eventually(c) : ff.always(c);
          }
        case tok::always:
          {
            formula c = to_nnf(ff, *a.l, positive);
            return positive ? ff.always(c) : ff.eventually(c);
          }
        case tok::until:
          if (!positive)
            throw parse_error("unsupported negated until", a.pos);
          return ff.until(to_nnf(ff, *a.l, true), to_nnf(ff, *a.r, true));
        default:
          throw parse_error("internal parser error", a.pos);
        }
    }
  }

  formula
  parse(formula_factory& ff, std::string_view text)
  {
    parser p(tokenize(text));
    ast_ptr a = p.parse_all();
    return to_nnf(ff, *a, true);
  }
}
