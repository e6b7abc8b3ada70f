#pragma once

#include <string_view>

namespace pamc::detail {

// Contents of data/gset_catalog.txt and data/g63_record.txt, baked in at
// build time.
extern const std::string_view kCatalogText;
extern const std::string_view kG63RecordText;

}  // namespace pamc::detail
