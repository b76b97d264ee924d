//! Parser for `--family` strings like `n=4,e=12,mu<=3,delta>=4`.
//! `n` and `e` are required; `e` accepts a single count or `lo..hi`;
//! `mu<=` defaults to the edge maximum and `delta>=` to zero.

use szl_core::enumerate::FamilySpec;

pub fn parse_family(text: &str, up_to_iso: bool) -> Result<FamilySpec, String> {
    let mut n: Option<usize> = None;
    let mut e_range: Option<(u64, u64)> = None;
    let mut mu_max: Option<u32> = None;
    let mut delta_min: u64 = 0;

    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if let Some(value) = token.strip_prefix("n=") {
            n = Some(
                value
                    .parse()
                    .map_err(|_| format!("invalid vertex count {value:?}"))?,
            );
        } else if let Some(value) = token.strip_prefix("e=") {
            let range = if let Some((lo, hi)) = value.split_once("..") {
                (
                    lo.parse().map_err(|_| format!("invalid edge bound {lo:?}"))?,
                    hi.parse().map_err(|_| format!("invalid edge bound {hi:?}"))?,
                )
            } else {
                let e: u64 = value
                    .parse()
                    .map_err(|_| format!("invalid edge count {value:?}"))?;
                (e, e)
            };
            e_range = Some(range);
        } else if let Some(value) = token.strip_prefix("mu<=") {
            mu_max = Some(
                value
                    .parse()
                    .map_err(|_| format!("invalid multiplicity bound {value:?}"))?,
            );
        } else if let Some(value) = token.strip_prefix("delta>=") {
            delta_min = value
                .parse()
                .map_err(|_| format!("invalid degree bound {value:?}"))?;
        } else {
            return Err(format!(
                "unknown family token {token:?} (expected n=, e=, mu<=, delta>=)"
            ));
        }
    }

    let n = n.ok_or("family needs n=")?;
    let (e_min, e_max) = e_range.ok_or("family needs e=")?;
    Ok(FamilySpec {
        n,
        e_min,
        e_max,
        mu_max: mu_max.unwrap_or(e_max.min(u64::from(u32::MAX)) as u32),
        delta_min,
        up_to_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_corollary_family() {
        let spec = parse_family("n=4,e=12,mu<=3,delta>=4", true).unwrap();
        assert_eq!(
            spec,
            FamilySpec {
                n: 4,
                e_min: 12,
                e_max: 12,
                mu_max: 3,
                delta_min: 4,
                up_to_iso: true,
            }
        );
    }

    #[test]
    fn parses_ranges_and_defaults() {
        let spec = parse_family("n=3,e=0..6", false).unwrap();
        assert_eq!(spec.e_min, 0);
        assert_eq!(spec.e_max, 6);
        assert_eq!(spec.mu_max, 6);
        assert_eq!(spec.delta_min, 0);
        assert!(!spec.up_to_iso);
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_family("e=12", true).is_err());
        assert!(parse_family("n=4", true).is_err());
        assert!(parse_family("n=4,e=12,mu=3", true).is_err());
        assert!(parse_family("n=four,e=12", true).is_err());
    }
}
