#include <rabinato/io.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rabinato
{
  std::vector<cube>
  cover_letters(const std::vector<std::uint32_t>& letters, std::size_t nvars)
  {
    const std::uint32_t full = nvars >= 32 ? ~0u : (1u << nvars) - 1;
    std::set<std::uint32_t> minterms(letters.begin(), letters.end());
    if (minterms.empty())
      return {};
    if (minterms.size() == (std::size_t(1) << nvars))
      return {cube{0, 0}};

    // Quine-McCluskey: merge cubes differing in one cared-for bit until no
    // merge applies; cubes never merged are the primes.
    std::set<std::pair<std::uint32_t, std::uint32_t>> level;
    for (auto m : minterms)
      level.insert({full, m});
    std::vector<cube> primes;
    while (!level.empty())
      {
        std::set<std::pair<std::uint32_t, std::uint32_t>> next, merged;
        for (auto [mask, value] : level)
          for (std::uint32_t bits = mask; bits; bits &= bits - 1)
            {
              std::uint32_t b = bits & -bits;
              if (value & b)
                continue;
              if (level.count({mask, value | b}))
                {
                  next.insert({mask & ~b, value});
                  merged.insert({mask, value});
                  merged.insert({mask, value | b});
                }
            }
        for (auto c : level)
          if (!merged.count(c))
            primes.push_back({c.first, c.second});
        level = std::move(next);
      }
    // Larger cubes first, then a fixed order, so the greedy cover is
    // deterministic.
    std::sort(primes.begin(), primes.end(), [](const cube& x, const cube& y) {
      int px = std::popcount(x.mask), py = std::popcount(y.mask);
      if (px != py)
        return px < py;
      return std::tie(x.mask, x.value) < std::tie(y.mask, y.value);
    });
    std::set<std::uint32_t> uncovered = minterms;
    std::vector<cube> out;
    while (!uncovered.empty())
      {
        std::size_t best = 0, best_count = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
          {
            std::size_t c = 0;
            for (auto m : uncovered)
              c += (m & primes[i].mask) == primes[i].value;
            if (c > best_count)
              {
                best = i;
                best_count = c;
              }
          }
        out.push_back(primes[best]);
        for (auto it = uncovered.begin(); it != uncovered.end();)
          it = (*it & primes[best].mask) == primes[best].value ? uncovered.erase(it) : std::next(it);
      }
    std::sort(out.begin(), out.end(), [](const cube& x, const cube& y) {
      auto lowest = [](const cube& c) { return std::tie(c.value, c.mask); };
      return lowest(x) < lowest(y);
    });
    return out;
  }

  namespace
  {
    std::vector<std::vector<std::uint32_t>>
    transition_marks(const explicit_automaton& a)
    {
      std::vector<std::vector<std::uint32_t>> marks(a.transition_count());
      std::uint32_t id = 0;
      auto add = [&](const transition_set& s) {
        for (std::size_t t : s.members())
          marks[t].push_back(id);
        ++id;
      };
      for (const auto& p : a.acceptance.pairs)
        {
          add(p.fin);
          for (const auto& inf : p.infs)
            add(inf);
        }
      return marks;
    }

    std::string
    label(const std::vector<cube>& cubes, const std::function<std::string(std::size_t)>& var,
          const char* conj, const char* disj, const char* neg)
    {
      if (cubes.empty())
        return "f";
      std::string out;
      for (std::size_t i = 0; i < cubes.size(); ++i)
        {
          if (i)
            out += disj;
          if (cubes[i].mask == 0)
            {
              out += "t";
              continue;
            }
          bool first = true;
          for (std::uint32_t bits = cubes[i].mask; bits; bits &= bits - 1)
            {
              std::size_t k = static_cast<std::size_t>(std::countr_zero(bits));
              if (!first)
                out += conj;
              first = false;
              if (!(cubes[i].value >> k & 1))
                out += neg;
              out += var(k);
            }
        }
      return out;
    }

    std::string
    quoted(std::string_view s)
    {
      std::string out = "\"";
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            out += '\\';
          out += c;
        }
      return out + "\"";
    }

    std::string
    join(const std::vector<std::uint32_t>& xs, const char* sep)
    {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + std::to_string(xs[i]);
      return out;
    }
  }

  std::vector<edge>
  group_edges(const explicit_automaton& a)
  {
    auto marks = transition_marks(a);
    const std::size_t letters = a.letter_count();
    std::vector<edge> out;
    for (std::uint32_t s = 0; s < a.state_count(); ++s)
      {
        std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::size_t> groups;
        for (std::uint32_t l = 0; l < letters; ++l)
          {
            std::size_t t = s * letters + l;
            auto key = std::make_pair(a.successor[t], marks[t]);
            auto [it, inserted] = groups.try_emplace(key, out.size());
            if (inserted)
              out.push_back({s, a.successor[t], marks[t], {}});
            out[it->second].letters.push_back(l);
          }
      }
    return out;
  }

  std::string
  emit_hoa(const explicit_automaton& a, std::string_view name)
  {
    std::ostringstream os;
    os << "HOA: v1\n";
    if (!name.empty())
      os << "name: " << quoted(name) << "\n";
    os << "tool: \"rabinato\"\n";
    os << "States: " << a.state_count() << "\n";
    os << "Start: " << a.initial << "\n";
    os << "AP: " << a.ap.size();
    for (const auto& p : a.ap)
      os << ' ' << quoted(p);
    os << "\n";
    const auto& pairs = a.acceptance.pairs;
    os << "acc-name: generalized-Rabin " << pairs.size();
    for (const auto& p : pairs)
      os << ' ' << p.infs.size();
    os << "\n";
    os << "Acceptance: " << a.acceptance.set_count() << ' ';
    if (pairs.empty())
      os << 'f';
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      {
        bool parens = pairs.size() > 1 && !pairs[i].infs.empty();
        os << (i ? " | " : "") << (parens ? "(" : "") << "Fin(" << id++ << ')';
        for (std::size_t j = 0; j < pairs[i].infs.size(); ++j)
          os << " & Inf(" << id++ << ')';
        os << (parens ? ")" : "");
      }
    os << "\n";
    os << "properties: trans-labels explicit-labels trans-acc deterministic complete\n";
    os << "--BODY--\n";
    auto edges = group_edges(a);
    std::size_t e = 0;
    for (std::uint32_t s = 0; s < a.state_count(); ++s)
      {
        os << "State: " << s << ' ' << quoted(a.state_names[s]) << "\n";
        for (; e < edges.size() && edges[e].src == s; ++e)
          {
            auto cubes = cover_letters(edges[e].letters, a.ap.size());
            os << '[' << label(cubes, [](std::size_t k) { return std::to_string(k); }, "&", " | ", "!")
               << "] " << edges[e].dst;
            if (!edges[e].marks.empty())
              os << " {" << join(edges[e].marks, " ") << '}';
            os << "\n";
          }
      }
    os << "--END--\n";
    return os.str();
  }

  std::string
  emit_dot(const explicit_automaton& a, std::string_view name)
  {
    std::ostringstream os;
    os << "digraph " << quoted(name.empty() ? "automaton" : name) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box, style=rounded];\n";
    os << "  init [shape=point];\n";
    os << "  init -> " << a.initial << ";\n";
    for (std::uint32_t s = 0; s < a.state_count(); ++s)
      os << "  " << s << " [label=" << quoted(a.state_names[s]) << "];\n";
    auto edges = group_edges(a);
    for (std::size_t e = 0; e < edges.size(); ++e)
      {
        auto cubes = cover_letters(edges[e].letters, a.ap.size());
        std::string text = "t" + std::to_string(e + 1) + ": "
                           + label(cubes, [&](std::size_t k) { return a.ap[k]; }, "&", " | ", "!");
        if (!edges[e].marks.empty())
          text += " {" + join(edges[e].marks, ",") + "}";
        os << "  " << edges[e].src << " -> " << edges[e].dst << " [label=" << quoted(text) << "];\n";
      }
    os << "}\n";
    return os.str();
  }

  automaton_stats
  stats(const explicit_automaton& a)
  {
    automaton_stats st;
    st.states = a.state_count();
    st.transitions = group_edges(a).size();
    st.disjuncts = a.acceptance.pairs.size();
    st.acceptance_sets = a.acceptance.set_count();
    return st;
  }

  namespace
  {
    [[noreturn]] void
    malformed(const std::string& what)
    {
      throw std::runtime_error("malformed HOA: " + what);
    }

    // Boolean expressions over integers (AP indices or set indices) with
    // t, f, !, &, | and parentheses.
    class expr_parser
    {
    public:
      struct node
      {
        char op;  // 't', 'f', 'v', '!', '&', '|', or 'F' / 'I' for Fin / Inf
        std::uint32_t index = 0;
        std::unique_ptr<node> l, r;
      };
      using ptr = std::unique_ptr<node>;

      explicit expr_parser(std::string_view s) : s_(s) {}

      ptr
      parse()
      {
        ptr n = disj();
        skip();
        if (i_ != s_.size())
          malformed("trailing input in expression '" + std::string(s_) + "'");
        return n;
      }

    private:
      void
      skip()
      {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
          ++i_;
      }
      bool
      eat(char c)
      {
        skip();
        if (i_ < s_.size() && s_[i_] == c)
          {
            ++i_;
            return true;
          }
        return false;
      }
      ptr
      binary(char op, ptr l, ptr r)
      {
        auto n = std::make_unique<node>();
        n->op = op;
        n->l = std::move(l);
        n->r = std::move(r);
        return n;
      }
      ptr
      disj()
      {
        ptr l = conj();
        while (eat('|'))
          l = binary('|', std::move(l), conj());
        return l;
      }
      ptr
      conj()
      {
        ptr l = unary();
        while (eat('&'))
          l = binary('&', std::move(l), unary());
        return l;
      }
      std::uint32_t
      number()
      {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
          ++i_;
        if (start == i_)
          malformed("expected a number");
        return static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, i_ - start))));
      }
      ptr
      unary()
      {
        auto n = std::make_unique<node>();
        if (eat('!'))
          {
            n->op = '!';
            n->l = unary();
            return n;
          }
        if (eat('('))
          {
            ptr inner = disj();
            if (!eat(')'))
              malformed("expected ')'");
            return inner;
          }
        skip();
        if (s_.substr(i_, 4) == "Fin(" || s_.substr(i_, 4) == "Inf(")
          {
            n->op = s_[i_] == 'F' ? 'F' : 'I';
            i_ += 4;
            n->index = number();
            if (!eat(')'))
              malformed("expected ')'");
            return n;
          }
        if (eat('t'))
          {
            n->op = 't';
            return n;
          }
        if (eat('f'))
          {
            n->op = 'f';
            return n;
          }
        n->op = 'v';
        n->index = number();
        return n;
      }

      std::string_view s_;
      std::size_t i_ = 0;
    };

    bool
    eval_label(const expr_parser::node& n, std::uint32_t letter)
    {
      switch (n.op)
        {
        case 't': return true;
        case 'f': return false;
        case 'v': return letter >> n.index & 1;
        case '!': return !eval_label(*n.l, letter);
        case '&': return eval_label(*n.l, letter) && eval_label(*n.r, letter);
        case '|': return eval_label(*n.l, letter) || eval_label(*n.r, letter);
        default: malformed("acceptance atom in a label");
        }
    }

    // Splits an acceptance condition into generalized Rabin pairs given as
    // (fin set, inf sets).
    void
    collect_pairs(const expr_parser::node& n,
                  std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>>& out)
    {
      if (n.op == '|')
        {
          collect_pairs(*n.l, out);
          collect_pairs(*n.r, out);
          return;
        }
      if (n.op == 'f')
        return;
      std::pair<std::int64_t, std::vector<std::uint32_t>> p{-1, {}};
      std::function<void(const expr_parser::node&)> walk = [&](const expr_parser::node& c) {
        switch (c.op)
          {
          case '&':
            walk(*c.l);
            walk(*c.r);
            break;
          case 'F':
            if (p.first >= 0)
              malformed("two Fin sets in one disjunct");
            p.first = c.index;
            break;
          case 'I':
            p.second.push_back(c.index);
            break;
          case 't':
            break;
          default:
            malformed("acceptance condition is not generalized Rabin");
          }
      };
      walk(n);
      out.push_back(std::move(p));
    }

    std::vector<std::string>
    quoted_strings(std::string_view s)
    {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < s.size(); ++i)
        {
          if (s[i] != '"')
            continue;
          std::string cur;
          for (++i; i < s.size() && s[i] != '"'; ++i)
            {
              if (s[i] == '\\' && i + 1 < s.size())
                ++i;
              cur += s[i];
            }
          out.push_back(std::move(cur));
        }
      return out;
    }
  }

  explicit_automaton
  read_hoa(std::string_view text)
  {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t nstates = 0, nsets = 0;
    bool have_states = false;
    explicit_automaton a;
    std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> pair_terms;
    bool in_body = false;
    std::int64_t current = -1;
    struct raw_edge
    {
      std::uint32_t src, dst;
      std::shared_ptr<expr_parser::node> label;
      std::vector<std::uint32_t> marks;
    };
    std::vector<raw_edge> edges;

    while (std::getline(in, line))
      {
        std::string_view v(line);
        auto starts = [&](std::string_view p) { return v.substr(0, p.size()) == p; };
        if (!in_body)
          {
            if (starts("States:"))
              {
                nstates = std::stoul(std::string(v.substr(7)));
                have_states = true;
              }
            else if (starts("Start:"))
              a.initial = static_cast<std::uint32_t>(std::stoul(std::string(v.substr(6))));
            else if (starts("AP:"))
              a.ap = quoted_strings(v.substr(3));
            else if (starts("Acceptance:"))
              {
                std::istringstream acc{std::string(v.substr(11))};
                acc >> nsets;
                std::string rest;
                std::getline(acc, rest);
                collect_pairs(*expr_parser(rest).parse(), pair_terms);
              }
            else if (starts("--BODY--"))
              in_body = true;
            continue;
          }
        if (starts("--END--"))
          break;
        if (starts("State:"))
          {
            std::istringstream st{std::string(v.substr(6))};
            st >> current;
            auto names = quoted_strings(v);
            if (a.state_names.size() <= static_cast<std::size_t>(current))
              a.state_names.resize(current + 1);
            a.state_names[current] = names.empty() ? "" : names[0];
            continue;
          }
        if (starts("["))
          {
            if (current < 0)
              malformed("edge before any state");
            auto close = v.find(']');
            if (close == std::string_view::npos)
              malformed("unterminated label");
            raw_edge e;
            e.src = static_cast<std::uint32_t>(current);
            e.label = expr_parser(v.substr(1, close - 1)).parse();
            std::string_view rest = v.substr(close + 1);
            auto brace = rest.find('{');
            e.dst = static_cast<std::uint32_t>(std::stoul(std::string(rest.substr(0, brace))));
            if (brace != std::string_view::npos)
              {
                std::istringstream ms{std::string(rest.substr(brace + 1, rest.find('}') - brace - 1))};
                std::uint32_t m;
                while (ms >> m)
                  e.marks.push_back(m);
              }
            edges.push_back(std::move(e));
          }
      }
    if (!have_states || !in_body)
      malformed("missing header or body");
    a.state_names.resize(nstates);
    a.ap_atoms.resize(a.ap.size());
    for (std::size_t k = 0; k < a.ap.size(); ++k)
      a.ap_atoms[k] = static_cast<std::uint32_t>(k);
    const std::size_t letters = a.letter_count();
    const std::uint32_t unset = ~0u;
    a.successor.assign(nstates * letters, unset);
    std::vector<transition_set> sets(nsets, transition_set(nstates * letters));
    for (const auto& e : edges)
      for (std::uint32_t l = 0; l < letters; ++l)
        {
          if (!eval_label(*e.label, l))
            continue;
          std::size_t t = e.src * letters + l;
          if (a.successor[t] != unset)
            malformed("nondeterministic edges");
          a.successor[t] = e.dst;
          for (auto m : e.marks)
            {
              if (m >= nsets)
                malformed("undeclared acceptance set " + std::to_string(m));
              sets[m].set(t);
            }
        }
    if (std::find(a.successor.begin(), a.successor.end(), unset) != a.successor.end())
      malformed("incomplete transition relation");
    for (const auto& [fin, infs] : pair_terms)
      {
        gen_rabin_pair p;
        p.fin = fin >= 0 ? sets.at(fin) : transition_set(nstates * letters);
        for (auto i : infs)
          p.infs.push_back(sets.at(i));
        a.acceptance.pairs.push_back(std::move(p));
      }
    return a;
  }
}
