#include "horadam/sequences.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace horadam {

HoradamParams::HoradamParams(Rational a, Rational b, Rational p, Rational q)
    : a_(std::move(a)), b_(std::move(b)), p_(std::move(p)), q_(std::move(q)) {
    if (p_.is_zero()) throw PreconditionViolation("Horadam parameter p must be nonzero");
    if (q_.is_zero()) throw PreconditionViolation("Horadam parameter q must be nonzero");
}

std::string HoradamParams::key() const {
    return a_.to_string() + "," + b_.to_string() + "," + p_.to_string() + "," + q_.to_string();
}

SequenceKind SequenceKind::horadam(HoradamParams params) { return {Tag::W, std::move(params)}; }

SequenceKind SequenceKind::lucas_u(const Rational& p, const Rational& q) {
    return {Tag::U, HoradamParams(0, 1, p, q)};
}

SequenceKind SequenceKind::lucas_v(const Rational& p, const Rational& q) {
    return {Tag::V, HoradamParams(2, p, p, q)};
}

SequenceKind SequenceKind::restricted(const Rational& a, const Rational& b, const Rational& q) {
    return {Tag::w, HoradamParams(a, b, 1, q)};
}

SequenceKind SequenceKind::gibonacci(const Rational& a, const Rational& b) {
    return {Tag::G, HoradamParams(a, b, 1, -1)};
}

SequenceKind SequenceKind::fibonacci() { return {Tag::F, HoradamParams::fibonacci()}; }

SequenceKind SequenceKind::lucas() { return {Tag::L, HoradamParams::lucas()}; }

std::string SequenceKind::name() const {
    const auto& k = params_;
    switch (tag_) {
        case Tag::W:
            return "W(" + k.key() + ")";
        case Tag::U:
            return "U(" + k.p().to_string() + "," + k.q().to_string() + ")";
        case Tag::V:
            return "V(" + k.p().to_string() + "," + k.q().to_string() + ")";
        case Tag::w:
            return "w(" + k.a().to_string() + "," + k.b().to_string() + "," + k.q().to_string() + ")";
        case Tag::G:
            return "G(" + k.a().to_string() + "," + k.b().to_string() + ")";
        case Tag::F:
            return "F";
        case Tag::L:
            return "L";
    }
    return "?";
}

namespace detail {

class TermMemo {
public:
    explicit TermMemo(const HoradamParams& params) : p_(params.p()), q_(params.q()) {
        forward_.push_back(params.a());
        forward_.push_back(params.b());
    }

    Rational at(Index j) {
        std::lock_guard lock(mutex_);
        if (j >= 0) {
            auto idx = static_cast<std::size_t>(j);
            while (forward_.size() <= idx) {
                std::size_t n = forward_.size();
                forward_.push_back(p_ * forward_[n - 1] - q_ * forward_[n - 2]);
            }
            return forward_[idx];
        }
        // backward_[k] holds W_{-(k+1)}.
        auto idx = static_cast<std::size_t>(-(j + 1));
        while (backward_.size() <= idx) {
            std::size_t k = backward_.size();
            const Rational& next = k == 0 ? forward_[0] : backward_[k - 1];
            const Rational& next2 = k == 0 ? forward_[1] : (k == 1 ? forward_[0] : backward_[k - 2]);
            backward_.push_back((p_ * next - next2) / q_);
        }
        return backward_[idx];
    }

private:
    std::mutex mutex_;
    Rational p_;
    Rational q_;
    std::vector<Rational> forward_;
    std::vector<Rational> backward_;
};

}  // namespace detail

namespace {

struct MemoRegistry {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<detail::TermMemo>> tables;
};

MemoRegistry& registry() {
    static MemoRegistry instance;
    return instance;
}

std::shared_ptr<detail::TermMemo> memo_for(const HoradamParams& params) {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto [it, inserted] = reg.tables.try_emplace(params.key());
    if (inserted) it->second = std::make_shared<detail::TermMemo>(params);
    return it->second;
}

}  // namespace

Sequence::Sequence(const HoradamParams& params) : params_(params), memo_(memo_for(params)) {}

Rational Sequence::operator()(Index j) const { return memo_->at(j); }

Rational term(const SequenceKind& kind, Index j) { return Sequence(kind)(j); }

std::size_t memo_table_count() {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    return reg.tables.size();
}

namespace {

Rational nonzero_discriminant(const HoradamParams& params) {
    Rational d = params.discriminant();
    if (d.is_zero()) {
        throw DegenerateDiscriminant("p^2 - 4q = 0 for (p,q) = (" + params.p().to_string() + "," +
                                     params.q().to_string() + "); Binet form needs distinct roots");
    }
    return d;
}

}  // namespace

BinetView::BinetView(const HoradamParams& params)
    : params_(params),
      discriminant_(nonzero_discriminant(params)),
      tau_(params.p() / 2, Rational(1, 2), discriminant_),
      sigma_(params.p() / 2, Rational(-1, 2), discriminant_),
      delta_(tau_ - sigma_),
      a_coef_((params.b() - params.a() * sigma_) / delta_),
      b_coef_((params.a() * tau_ - params.b()) / delta_) {}

QuadExt binet_term(const BinetView& view, Index j) {
    return view.a_coef() * pow(view.tau(), j) + view.b_coef() * pow(view.sigma(), j);
}

QuadExt lemma3_residual(const Rational& p, const Rational& q, Index r, Index d, Lemma3Identity which) {
    HoradamParams u_params(0, 1, p, q);
    BinetView view(u_params);
    Sequence u(u_params);
    Sequence v(HoradamParams(2, p, p, q));
    const QuadExt& tau = view.tau();
    const QuadExt& sigma = view.sigma();
    const Index rd = checked_add(r, d);
    switch (which) {
        case Lemma3Identity::L1:
            return (u(rd) - pow(tau, r) * u(d)) - pow(sigma, d) * u(r);
        case Lemma3Identity::L2:
            return (u(rd) - pow(sigma, r) * u(d)) - pow(tau, d) * u(r);
        case Lemma3Identity::L3:
            return (v(rd) - pow(tau, r) * v(d)) + pow(sigma, d) * u(r) * view.delta();
        case Lemma3Identity::L4:
            return (v(rd) - pow(sigma, r) * v(d)) - pow(tau, d) * u(r) * view.delta();
    }
    throw PreconditionViolation("unknown Lucas relation");
}

QuadExt lemma4_residual(const HoradamParams& params, Index j) {
    if (!params.is_restricted()) {
        throw PreconditionViolation("restricted-sequence identity requires p = 1, got p = " +
                                    params.p().to_string());
    }
    BinetView view(params);
    Sequence w(params);
    QuadExt lhs = view.a_coef() * pow(view.tau(), j) - view.b_coef() * pow(view.sigma(), j);
    QuadExt rhs = (w(checked_add(j, 1)) - params.q() * w(checked_sub(j, 1))) / view.delta();
    return lhs - rhs;
}

}  // namespace horadam
