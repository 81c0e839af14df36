#ifndef AINFTY_PRESENTATION_HPP
#define AINFTY_PRESENTATION_HPP

#include "ainfty/bimodule.hpp"

#include <iosfwd>
#include <string>

namespace ainfty {

/* Presentation document grammar (one directive per line, '#' comments):
 *
 *   ainf v1
 *   name <identifier>
 *   split <label> [<label> ...]     # objects X^n(L) for n in window
 *   window <lo> <hi>
 *   equivariant
 *   object <name>                   # plain objects, when no split is given
 *   gen <id> <src> <dst> <c> <a>
 *   mu <d> | <in_1> ... <in_d> | <out_1> ... <out_k>
 *
 * Outputs may use the unit token e(<object>). Round trip through
 * print_presentation is the identity on the parsed structure. */
AinfCategory parse_presentation(const std::string& text);
AinfCategory load_presentation(const std::string& path);
std::string print_presentation(const AinfCategory& cat);

// canonical name of a split object
std::string split_object_name(int level, const std::string& label);

/* Map documents (one directive per line):
 *   ainfmap v1
 *   kind functor | bimodule
 *   obj <src-object> <dst-object>                  (functor)
 *   comp <d> | <in...> | <out...>                  (functor)
 *   degree <s>                                     (bimodule, default 0)
 *   bicomp <p> <q> | <xs...> | <u> | <zs...> | <out...>
 * Unit tokens e(<object>) are allowed in the u slot and outputs. */
AinfFunctor load_functor(const std::string& path, CatPtr src, CatPtr dst);
BimoduleMap load_bimodule_map(const std::string& path, std::shared_ptr<const HomBimodule> src,
                              std::shared_ptr<const HomBimodule> dst);

} // namespace ainfty

#endif
