#include "hkq/arrangement.hpp"

#include "hkq/errors.hpp"
#include "hkq/lp.hpp"

namespace hkq {

Arrangement build_arrangement(const TorusSetup& s)
{
    const GaleData g = gale(s);
    Arrangement arr;
    arr.n = s.n();
    arr.dim = s.n() - s.d();
    for (std::size_t i = 0; i < s.n(); ++i)
    {
        RatVec normal = g.normal(i);
        if (is_zero(normal))
        {
            if (g.dvec[i] == 0)
                throw DegenerateNormal("n_" + std::to_string(i + 1)
                                       + " = 0 and d_" + std::to_string(i + 1)
                                       + " = 0: coordinate is fixed by the torus and alpha is not generic");
            arr.constant.push_back(i);
            arr.constant_sign.push_back(-sign(g.dvec[i]));
            continue;
        }
        arr.hyperplanes.push_back({i, std::move(normal), g.dvec[i]});
    }
    return arr;
}

namespace {

struct Restricted
{
    std::size_t h;  ///< position in arr.hyperplanes
    RatVec a;       ///< restricted normal
    Rat b;          ///< restricted offset
};

class FaceEnumerator
{
    public:
        explicit FaceEnumerator(const Arrangement& arr) : arr_(arr) {}

        std::vector<Face> run()
        {
            if (arr_.dim == 0)
            {
                faces_.push_back({base_sigma(), 0});
                return std::move(faces_);
            }
            std::vector<std::size_t> Z;
            RowSpace span(arr_.dim);
            visit(Z, 0, span);
            return std::move(faces_);
        }

    private:
        SignVector base_sigma() const
        {
            SignVector sigma(arr_.n, 0);
            for (std::size_t k = 0; k < arr_.constant.size(); ++k)
                sigma[arr_.constant[k]] = static_cast<std::int8_t>(arr_.constant_sign[k]);
            return sigma;
        }

        void visit(std::vector<std::size_t>& Z, std::size_t start, const RowSpace& span)
        {
            process(Z);
            if (Z.size() == arr_.dim)
                return;
            for (std::size_t i = start; i < arr_.hyperplanes.size(); ++i)
            {
                const RatVec& a = arr_.hyperplanes[i].normal;
                if (span.contains(a))
                    continue;
                RowSpace next = span;
                next.insert(a);
                Z.push_back(i);
                visit(Z, i + 1, next);
                Z.pop_back();
            }
        }

        void process(const std::vector<std::size_t>& Z)
        {
            const std::size_t m = arr_.dim;
            // affine hull L_Z = p + V y
            RatVec p(m);
            RatMatrix V = RatMatrix::identity(m);
            if (!Z.empty())
            {
                RatMatrix A(Z.size(), m);
                RatVec b(Z.size());
                for (std::size_t r = 0; r < Z.size(); ++r)
                {
                    const auto& H = arr_.hyperplanes[Z[r]];
                    for (std::size_t j = 0; j < m; ++j)
                        A(r, j) = H.normal[j];
                    b[r] = H.offset;
                }
                p = *solve(A, b);
                V = nullspace(A);
            }
            const std::size_t k = V.cols();
            const RatMatrix Vt = V.transpose();

            SignVector sigma = base_sigma();
            std::vector<Restricted> moving;
            std::vector<bool> in_Z(arr_.hyperplanes.size(), false);
            for (auto z : Z)
                in_Z[z] = true;
            for (std::size_t i = 0; i < arr_.hyperplanes.size(); ++i)
            {
                if (in_Z[i])
                    continue;
                const auto& H = arr_.hyperplanes[i];
                RatVec a = Vt * H.normal;
                Rat b = H.offset - dot(H.normal, p);
                if (is_zero(a))
                {
                    if (b == 0)
                        throw NotSimple("hyperplane " + std::to_string(H.index + 1)
                                        + " contains the intersection of a set with independent normals");
                    sigma[H.index] = static_cast<std::int8_t>(-sign(b));
                    continue;
                }
                moving.push_back({i, std::move(a), std::move(b)});
            }

            if (k == 0)
            {
                faces_.push_back({std::move(sigma), 0});
                return;
            }

            // regions of the restricted arrangement, built one hyperplane at a time
            std::vector<RatVec> as;
            RatVec bs;
            for (const auto& r : moving)
            {
                as.push_back(r.a);
                bs.push_back(r.b);
            }
            std::vector<std::vector<int>> regions{{}};
            for (std::size_t h = 0; h < moving.size(); ++h)
            {
                std::vector<RatVec> a_sub(as.begin(), as.begin() + h + 1);
                RatVec b_sub(bs.begin(), bs.begin() + h + 1);
                std::vector<std::vector<int>> next;
                for (const auto& reg : regions)
                {
                    std::vector<int> plus = reg, minus = reg;
                    plus.push_back(1);
                    minus.push_back(-1);
                    // the region is nonempty and not contained in the hyperplane, so at
                    // least one side survives
                    const bool has_plus = strictly_feasible(a_sub, b_sub, plus, k);
                    const bool has_minus = !has_plus || strictly_feasible(a_sub, b_sub, minus, k);
                    if (has_plus)
                        next.push_back(std::move(plus));
                    if (has_minus)
                        next.push_back(std::move(minus));
                }
                regions = std::move(next);
            }

            for (const auto& reg : regions)
            {
                if (!cone_is_trivial(as, reg, k))
                    continue;
                SignVector face = sigma;
                for (std::size_t r = 0; r < moving.size(); ++r)
                    face[arr_.hyperplanes[moving[r].h].index] = static_cast<std::int8_t>(reg[r]);
                faces_.push_back({std::move(face), k});
            }
        }

        const Arrangement& arr_;
        std::vector<Face> faces_;
};

}  // namespace

std::vector<Face> bounded_faces(const Arrangement& arr)
{
    return FaceEnumerator(arr).run();
}

FaceCensus face_census(const Arrangement& arr)
{
    FaceCensus c;
    c.d.assign(arr.dim + 1, 0);
    for (const auto& f : bounded_faces(arr))
        ++c.d[f.dim];
    return c;
}

PoincarePoly poincare_from_census(const FaceCensus& census)
{
    PoincarePoly p;
    for (std::size_t k = 0; k < census.d.size(); ++k)
        p = p + PoincarePoly::constant(static_cast<long>(census.d[k])) * PoincarePoly::q_minus_one_pow(k);
    return p;
}

}  // namespace hkq
