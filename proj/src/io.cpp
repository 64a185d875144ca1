#include "dgl/io.hpp"

namespace dgl {

json letter_to_json(Letter c) { return json(letter_indices(c)); }

Letter letter_from_json(const json& j) { return letter_from_indices(j.get<std::vector<int>>()); }

json word_to_json(Word w)
{
    json a = json::array();
    for (int k = 0; k < w.size(); ++k) a.push_back(letter_to_json(w[k]));
    return a;
}

Word word_from_json(const json& j)
{
    std::vector<Letter> ls;
    for (const auto& x : j) ls.push_back(letter_from_json(x));
    return Word::from_letters(ls);
}

json tensor_to_json(const Tensor& t)
{
    json terms = json::array();
    for (const auto& [w, c] : t.terms())
        terms.push_back({{"word", word_to_json(w)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return {{"n", t.n()}, {"maxLetters", t.max_letters()}, {"terms", terms}};
}

json tensor_to_json(const RealTensor& t)
{
    json terms = json::array();
    for (const auto& [w, c] : t.terms()) terms.push_back({{"word", word_to_json(w)}, {"coeff", c}});
    return {{"n", t.n()}, {"maxLetters", t.max_letters()}, {"terms", terms}};
}

Tensor tensor_from_json(const json& j)
{
    int n = j.at("n").get<int>(), L = j.at("maxLetters").get<int>();
    std::vector<Tensor::Term> terms;
    for (const auto& t : j.at("terms")) {
        Word w = word_from_json(t.at("word"));
        for (int k = 0; k < w.size(); ++k)
            if (!letter_fits(w[k], n)) throw ConfigError("tensor json: letter index above n");
        Rational c(Integer(t.at("num").get<std::string>()), Integer(t.at("den").get<std::string>()));
        c.canonicalize();
        terms.push_back({w, c});
    }
    return Tensor::from_terms(n, L, std::move(terms));
}

json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    return parse_rational(j.get<std::string>());
}

}  // namespace dgl
