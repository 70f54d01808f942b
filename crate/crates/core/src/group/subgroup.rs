use super::{Elem, FiniteGroup, GroupError};

/// A closed subset of a parent group's elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<Elem>,
}

impl std::fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.name())
            .field("members", &self.members)
            .finish()
    }
}

impl<'g> Subgroup<'g> {
    pub fn trivial(parent: &'g FiniteGroup) -> Self {
        Self {
            parent,
            members: vec![0],
        }
    }

    pub fn whole(parent: &'g FiniteGroup) -> Self {
        Self {
            parent,
            members: parent.elements().collect(),
        }
    }

    /// Smallest subgroup of `parent` containing `seed`.
    ///
    /// Worklist saturation: each seed element not yet covered becomes a
    /// generator, and the current member set is re-multiplied on the right
    /// by all generators until nothing new appears. Right multiplication by
    /// generators suffices for inverses because every element has finite order.
    pub fn closure(
        parent: &'g FiniteGroup,
        seed: impl IntoIterator<Item = Elem>,
    ) -> Result<Self, GroupError> {
        let n = parent.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut gens: Vec<Elem> = Vec::new();
        for s in seed {
            parent.check_index(s)?;
            if inside[s] {
                continue;
            }
            gens.push(s);
            let mut queue = members.clone();
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = parent.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(Self { parent, members })
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    /// Strictly increasing element indices; always starts with 0.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// `g s g^-1` lies in the subgroup for every `g` and member `s`.
    pub fn is_normal(&self) -> bool {
        let g = self.parent;
        g.elements().all(|x| {
            let xi = g.inv(x);
            self.members
                .iter()
                .all(|&s| self.contains(g.mul(g.mul(x, s), xi)))
        })
    }

    /// The subgroup as a standalone group; member `k` (in ascending order)
    /// becomes element `k`.
    pub fn to_group(&self, name: impl Into<String>) -> FiniteGroup {
        let g = self.parent;
        let mut position = vec![u32::MAX; g.order()];
        for (k, &x) in self.members.iter().enumerate() {
            position[x] = k as u32;
        }
        let k = self.members.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &self.members {
            for &y in &self.members {
                table.push(position[g.mul(x, y)]);
            }
        }
        FiniteGroup::from_trusted_table(name.into(), k, table)
    }

    /// Quotient by this subgroup. Cosets are represented by their minimal
    /// element index; the cosets are numbered in increasing order of their
    /// representatives, so the identity coset is 0.
    pub fn quotient(&self, name: impl Into<String>) -> Result<FiniteGroup, GroupError> {
        if !self.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let g = self.parent;
        let mut label = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if label[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &s in &self.members {
                label[g.mul(x, s)] = id;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(label[g.mul(a, b)]);
            }
        }
        Ok(FiniteGroup::from_trusted_table(name.into(), k, table))
    }
}
