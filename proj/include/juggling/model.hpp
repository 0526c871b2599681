#pragma once

// A chain specification naming one of the models with its sizes and
// parameters, and uniform access to its states, kernel and stationary law.

#include <optional>
#include <string>
#include <vector>

#include "chains.hpp"
#include "combinat.hpp"
#include "infinite.hpp"
#include "kernel.hpp"
#include "symfun.hpp"

namespace juggling {

enum class Model {
    Mjmc,
    MjmcPartition,
    Enriched,
    AddDrop,
    EnrichedAddDrop,
    Annihilation,
    EnrichedAnnihilation,
    DoublyEnriched,
    Umjmc,
    Imjmc,
};

inline const std::vector<std::pair<std::string, Model>>& model_names()
{
    static const std::vector<std::pair<std::string, Model>> names{
        {"mjmc", Model::Mjmc},
        {"mjmc-partition", Model::MjmcPartition},
        {"enriched", Model::Enriched},
        {"adddrop", Model::AddDrop},
        {"enriched-adddrop", Model::EnrichedAddDrop},
        {"annihilation", Model::Annihilation},
        {"enriched-annihilation", Model::EnrichedAnnihilation},
        {"doubly-enriched", Model::DoublyEnriched},
        {"umjmc", Model::Umjmc},
        {"imjmc", Model::Imjmc},
    };
    return names;
}

inline Model parse_model(const std::string& name)
{
    for (const auto& [n, m] : model_names()) {
        if (n == name)
            return m;
    }
    throw DomainError("unknown model '" + name + "'");
}

inline std::string model_name(Model m)
{
    for (const auto& [n, mm] : model_names()) {
        if (mm == m)
            return n;
    }
    return "?";
}

/// Sizes are always given as h (word length) and k (Empty count); the
/// set-partition models use H = h+1 and K = k+1, the partition models l = h-k.
struct ChainSpec {
    Model model = Model::Mjmc;
    int h = 0;
    int k = 0;
    std::vector<Rational> xs;          ///< mjmc family, and finite umjmc/imjmc
    AddDropParams<Rational> adddrop;   ///< add-drop family
    std::vector<Rational> letters;     ///< annihilation family: z_1..z_L
    std::optional<TailParams<Rational>> tail; ///< umjmc/imjmc
    BuildOptions options;
    /// Cap on partition parts (umjmc) or size (imjmc) for listing states.
    int cap = 6;

    int H() const { return h + 1; }
    int K() const { return k + 1; }
    int l() const { return h - k; }

    bool is_infinite() const { return model == Model::Umjmc || model == Model::Imjmc; }

    bool is_annihilation_family() const
    {
        return model == Model::Annihilation || model == Model::EnrichedAnnihilation || model == Model::DoublyEnriched;
    }

    /// Finite-support parameters of an infinite model, used for its finite reduction.
    std::vector<Rational> finite_xs() const
    {
        if (!xs.empty())
            return xs;
        throw DomainError("model '" + model_name(model) + "' needs finite-support parameters here");
    }

    TailParams<Rational> tail_params() const
    {
        if (tail)
            return *tail;
        if (!xs.empty())
            return TailParams<Rational>::finite(xs);
        throw DomainError("model '" + model_name(model) + "' needs insertion parameters");
    }
};

inline std::vector<std::string> state_labels(const ChainSpec& s)
{
    switch (s.model) {
    case Model::Mjmc:
        return detail::labels_of(enumerate_words(s.h, s.k));
    case Model::MjmcPartition:
        return detail::labels_of(enumerate_box_partitions(s.k, s.l()));
    case Model::Enriched:
        return detail::labels_of(enumerate_set_partitions(s.H(), s.K()));
    case Model::AddDrop:
    case Model::Annihilation:
        return detail::labels_of(enumerate_all_words(s.h));
    case Model::EnrichedAddDrop:
    case Model::EnrichedAnnihilation:
        return detail::labels_of(enumerate_all_set_partitions(s.H()));
    case Model::DoublyEnriched:
        return detail::labels_of(enumerate_letter_words(s.h, static_cast<int>(s.letters.size())));
    case Model::Umjmc:
        return detail::labels_of(enumerate_box_partitions(s.cap, s.l()));
    case Model::Imjmc:
        return detail::labels_of(enumerate_partitions_up_to(s.cap));
    }
    return {};
}

/// The finite kernel. An umjmc with finite support x_0..x_k is the partition
/// form on Par_{k,l}; the imjmc has no finite kernel.
inline SparseKernel<Rational> build_kernel(const ChainSpec& s)
{
    switch (s.model) {
    case Model::Mjmc:
        return build_mjmc(s.h, s.k, s.xs, s.options);
    case Model::MjmcPartition:
        return build_mjmc_partition_form(s.k, s.l(), s.xs, s.options);
    case Model::Enriched:
        return build_enriched(s.H(), s.K(), s.xs, s.options);
    case Model::AddDrop:
        return build_adddrop(s.h, s.adddrop, s.options);
    case Model::EnrichedAddDrop:
        return build_enriched_adddrop(s.H(), s.adddrop, s.options);
    case Model::Annihilation:
        return build_annihilation(s.h, s.letters, s.options);
    case Model::EnrichedAnnihilation:
        return build_enriched_annihilation(s.H(), s.letters, s.options);
    case Model::DoublyEnriched:
        return build_doubly_enriched(s.h, s.letters, s.options);
    case Model::Umjmc: {
        const auto xs = s.finite_xs();
        return build_mjmc_partition_form(static_cast<int>(xs.size()) - 1, s.l(), xs, s.options);
    }
    case Model::Imjmc:
        break;
    }
    throw DomainError("model '" + model_name(s.model) + "' has no finite transition kernel");
}

/// Closed-form stationary law. For umjmc/imjmc: the invariant weights on the
/// capped state list, divided by the truncated mass (not normalized on the cap).
inline Distribution<Rational> closed_form_stationary(const ChainSpec& s)
{
    switch (s.model) {
    case Model::Mjmc:
        return stationary_mjmc(s.h, s.k, s.xs);
    case Model::MjmcPartition:
        return stationary_mjmc_partition_form(s.k, s.l(), s.xs);
    case Model::Enriched:
        return stationary_enriched(s.H(), s.K(), s.xs);
    case Model::AddDrop:
        return stationary_adddrop(s.h, s.adddrop);
    case Model::EnrichedAddDrop:
        return stationary_enriched_adddrop(s.H(), s.adddrop);
    case Model::Annihilation:
        return s.options.allow_unnormalized ? annihilation_weights(s.h, s.letters) : stationary_annihilation(s.h, s.letters);
    case Model::EnrichedAnnihilation:
        return s.options.allow_unnormalized ? enriched_annihilation_weights(s.H(), s.letters)
                                            : stationary_enriched_annihilation(s.H(), s.letters);
    case Model::DoublyEnriched:
        return s.options.allow_unnormalized ? doubly_enriched_weights(s.h, s.letters) : stationary_doubly_enriched(s.h, s.letters);
    case Model::Umjmc: {
        const auto params = s.tail_params();
        const auto mass = umjmc_mass(s.l(), params, 1e-12).value;
        const auto states = enumerate_box_partitions(s.cap, s.l());
        Distribution<Rational> d{detail::labels_of(states), {}, false};
        for (const auto& p : states)
            d.weights.push_back(umjmc_weight(p, params) / mass);
        return d;
    }
    case Model::Imjmc: {
        const auto params = s.tail_params();
        const auto mass = imjmc_mass(params, 1e-12).value;
        const auto states = enumerate_partitions_up_to(s.cap);
        Distribution<Rational> d{detail::labels_of(states), {}, false};
        for (const auto& p : states)
            d.weights.push_back(imjmc_weight(p, params) / mass);
        return d;
    }
    }
    return {};
}

/// Steps after which the law is exactly stationary (annihilation family), or
/// the generic burn-in 10 h.
inline int default_burn_in(const ChainSpec& s)
{
    return s.is_annihilation_family() ? s.h : 10 * std::max(s.h, 1);
}

} // namespace juggling
